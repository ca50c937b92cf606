#include <algorithm>
#include <cstring>

#include "psl2/arith.hpp"
#include "psl2/errors.hpp"

namespace psl2::arith {

namespace {

// Above this base-prime bound the base table alone would exceed a few tens of
// MiB, so ranges that high are enumerated with the primality test instead.
constexpr u64 kMaxSieveBase = u64{1} << 26;

void check_segment(const SieveOptions& opts) {
  if (opts.segment_bytes == 0 || opts.segment_bytes > SieveOptions::kMaxSegmentBytes)
    throw InvalidArgument("sieve: segment size must be in [1, 64 MiB]");
}

}  // namespace

std::vector<u64> small_primes(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<std::uint8_t> composite(n + 1, 0);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit,
                    const SieveOptions& opts) {
  if (lo > hi) throw InvalidArgument("primes_in_range: lo > hi");
  check_segment(opts);
  if (lo <= 2 && 2 <= hi) visit(2);
  u64 start = std::max<u64>(lo, 3);
  if (start % 2 == 0) {
    if (start == hi) return;
    ++start;
  }
  if (start > hi) return;

  const u64 base_limit = isqrt(hi);
  if (base_limit > kMaxSieveBase) {
    for (u64 n = start;; n += 2) {
      if (is_prime(n)) visit(n);
      if (hi - n < 2) break;
    }
    return;
  }

  std::vector<u64> base = small_primes(base_limit);
  if (!base.empty()) base.erase(base.begin());  // odd-only representation
  std::vector<u64> next(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const u64 q = base[i];
    u64 m = std::max(q * q, (start + q - 1) / q * q);
    if (m % 2 == 0) m += q;
    next[i] = m;
  }

  std::vector<std::uint8_t> seg(opts.segment_bytes);
  for (u64 seg_lo = start; seg_lo <= hi;) {
    const u64 len = std::min<u64>(opts.segment_bytes, (hi - seg_lo) / 2 + 1);
    const u64 seg_hi = seg_lo + 2 * (len - 1);
    std::fill_n(seg.begin(), len, std::uint8_t{1});
    for (std::size_t i = 0; i < base.size(); ++i) {
      const u64 q = base[i];
      if (q * q > seg_hi) break;
      u64 m = next[i];
      for (; m <= seg_hi; m += 2 * q) seg[(m - seg_lo) / 2] = 0;
      next[i] = m;
    }
    for (u64 j = 0; j < len; ++j)
      if (seg[j]) visit(seg_lo + 2 * j);
    if (hi - seg_hi < 2) break;
    seg_lo = seg_hi + 2;
  }
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, const SieveOptions& opts) {
  std::vector<u64> out;
  for_each_prime(lo, hi, [&](u64 p) { out.push_back(p); }, opts);
  return out;
}

LinearFormSieve::LinearFormSieve(std::vector<LinearForm> forms, u64 bound)
    : forms_(std::move(forms)), bound_(bound) {
  if (forms_.empty()) throw InvalidArgument("LinearFormSieve: empty family");
  for (const auto& f : forms_)
    if (f.a == 0) throw InvalidArgument("LinearFormSieve: leading coefficient must be positive");
  if (bound_ < 2) throw InvalidArgument("LinearFormSieve: bound must be at least 2");

  for (const auto& f : forms_) {
    const u64 t = f.b > bound_ ? 0 : (bound_ - f.b) / f.a + 1;
    exact_below_ = std::max(exact_below_, t);
  }

  auto vanishing_residues = [&](u64 q) {
    std::vector<u64> roots;
    for (const auto& f : forms_) {
      if (f.a % q != 0) {
        roots.push_back(mul_mod((q - f.b % q) % q, inv_mod(f.a % q, q), q));
      } else if (f.b % q == 0) {
        for (u64 r = 0; r < q; ++r) roots.push_back(r);
      }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  };

  for (u64 q : small_primes(bound_)) {
    if (q <= 13) {
      wheel_primes_.push_back(q);
      wheel_period_ *= q;
    } else {
      sieving_.push_back({q, vanishing_residues(q)});
    }
  }
  wheel_.assign(wheel_period_, 1);
  for (u64 q : wheel_primes_)
    for (u64 r : vanishing_residues(q))
      for (u64 j = r; j < wheel_period_; j += q) wheel_[j] = 0;
}

void LinearFormSieve::sieve_block(u64 t_lo, u64 t_hi, std::vector<std::uint8_t>& survivors) const {
  if (t_lo > t_hi) throw InvalidArgument("LinearFormSieve: empty block");
  const u64 len = t_hi - t_lo;
  survivors.resize(len);
  {
    u64 off = t_lo % wheel_period_;
    u64 pos = 0;
    while (pos < len) {
      const u64 n = std::min(len - pos, wheel_period_ - off);
      std::memcpy(survivors.data() + pos, wheel_.data() + off, n);
      pos += n;
      off = 0;
    }
  }
  for (const auto& [q, roots] : sieving_) {
    const u64 shift = t_lo % q;
    for (u64 r : roots) {
      for (u64 j = (r + q - shift) % q; j < len; j += q) survivors[j] = 0;
    }
  }
  for (u64 t = t_lo; t < std::min(t_hi, exact_below_); ++t) {
    bool all = true;
    for (const auto& f : forms_) all = all && is_prime(f.at(t));
    survivors[t - t_lo] = all ? 1 : 0;
  }
}

}  // namespace psl2::arith
