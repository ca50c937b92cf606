#include "psl2/heathbrown.hpp"

#include <algorithm>

#include "psl2/arith.hpp"
#include "psl2/errors.hpp"
#include "psl2/parallel.hpp"

namespace psl2::heathbrown {

HbCandidate qualifies(u64 p) {
  if (!arith::is_prime(p)) throw InvalidArgument("qualifies: " + std::to_string(p) + " is not prime");
  HbCandidate c;
  c.p = p;
  c.omega_minus = arith::big_omega(p - 1);
  c.omega_plus = arith::big_omega(p + 1);
  c.qualifies = p % kModulus == kResidue && c.omega_minus + c.omega_plus <= kOmegaSumMax &&
                c.omega_minus <= kOmegaEachMax && c.omega_plus <= kOmegaEachMax;
  if (p >= 5) {
    c.profile = invariants::profile(p);
    c.values = invariants::evaluate(*c.profile);
  }
  return c;
}

std::vector<HbCandidate> scan_hb(u64 limit, unsigned threads) {
  if (limit < 77) throw InvalidArgument("scan_hb: limit must be at least 77");
  // Candidates are 72t + 5 for t in [0, t_end).
  const u64 t_end = (limit - kResidue) / kModulus + 1;
  const arith::LinearFormSieve sieve({{kModulus, kResidue}},
                                     std::clamp<u64>(arith::isqrt(limit), 2, u64{1} << 15));
  constexpr u64 kBlock = u64{1} << 16;
  const std::size_t n_blocks = static_cast<std::size_t>((t_end - 1) / kBlock + 1);
  std::vector<std::vector<HbCandidate>> results(n_blocks);
  for_each_block(n_blocks, threads, [&](std::size_t b) {
    const u64 t_lo = b * kBlock;
    const u64 t_hi = std::min(t_end, t_lo + kBlock);
    std::vector<std::uint8_t> alive;
    sieve.sieve_block(t_lo, t_hi, alive);
    for (u64 t = t_lo; t < t_hi; ++t) {
      const u64 p = kModulus * t + kResidue;
      if (!alive[t - t_lo] || !arith::is_prime(p)) continue;
      HbCandidate c = qualifies(p);
      if (!c.qualifies) continue;
      const InvariantProfile& prof = *c.profile;
      if (prof.k != 0 || prof.l != 1 || prof.sigma != 0)
        throw IntegrityError("scan_hb: p = " + std::to_string(p) + " has unexpected k, l or sigma");
      results[b].push_back(std::move(c));
    }
  });
  std::vector<HbCandidate> out;
  for (auto& block : results)
    for (auto& c : block) out.push_back(std::move(c));
  return out;
}

UpperBounds derive_upper_bounds() {
  // p = 5 mod 72: p - 1 = 4 * odd with 3 not dividing it, p + 1 = 2 * 3 * odd.
  // So (p-1)/2 = 2 * m1, (p+1)/2 = 3 * m2 with m1, m2 odd and
  //   Omega(p-1) = 2 + Omega(m1) <= 8, Omega(p+1) = 2 + Omega(m2) <= 8,
  //   Omega(m1) + Omega(m2) <= 11 - 4.
  // Divisor counts are largest when the primes are distinct.
  constexpr unsigned kForced = 4;
  constexpr unsigned budget = kOmegaSumMax - kForced;
  constexpr unsigned each = kOmegaEachMax - 2;

  UpperBounds out;
  bool first = true;
  for (unsigned a = 0; a <= each; ++a) {
    for (unsigned b = 0; b <= each && a + b <= budget; ++b) {
      // alpha = 1 needs 5 | m1 * m2, which needs at least one odd prime.
      if (a + b == 0) continue;
      const u64 epsilon = u64{1} << (1 + a);  // (p-1)/2 = 2 * (a distinct odd primes)
      const u64 delta = u64{1} << (1 + b);    // (p+1)/2 = 3 * (b distinct primes != 3)
      const InvariantProfile prof = invariants::synthetic_profile(delta, epsilon, 0, 1, 0, 1);
      const Invariants v = invariants::evaluate(prof);
      if (first || v.i > out.bounds.i) {
        out.bounds.i = v.i;
        out.icn_profile = prof;
      }
      if (first || v.s > out.bounds.s) {
        out.bounds.s = v.s;
        out.s_profile = prof;
      }
      out.bounds.c = first ? v.c : std::max(out.bounds.c, v.c);
      out.bounds.n = first ? v.n : std::max(out.bounds.n, v.n);
      first = false;
    }
  }
  return out;
}

}  // namespace psl2::heathbrown
