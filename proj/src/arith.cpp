#include "psl2/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <tuple>

#include "psl2/errors.hpp"

namespace psl2::arith {

namespace {

// Montgomery arithmetic modulo an odd n < 2^64, values kept in [0, n).
class Montgomery {
 public:
  explicit Montgomery(u64 n) : n_(n) {
    u64 inv = n;  // Newton iteration for n^-1 mod 2^64; 5 rounds double 3 bits to 96
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    inv_ = inv;
    const u64 r = (0 - n) % n;  // 2^64 mod n
    r2_ = static_cast<u64>(static_cast<u128>(r) * r % n);
    one_ = r;
  }

  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * inv_;
    const u64 hi = static_cast<u64>(t >> 64);
    const u64 mn = static_cast<u64>((static_cast<u128>(m) * n_) >> 64);
    return hi >= mn ? hi - mn : hi - mn + n_;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const { return mul(a % n_, r2_); }
  u64 from(u64 a) const { return reduce(a); }
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return (s < a || s >= n_) ? s - n_ : s;
  }
  u64 one() const { return one_; }
  u64 modulus() const { return n_; }

 private:
  u64 n_;
  u64 inv_;
  u64 r2_;
  u64 one_;
};

constexpr std::array<u64, 18> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                              29, 31, 37, 41, 43, 47, 53, 59, 61};

// Bases known to make strong-pseudoprime testing exact below 2^64.
constexpr std::array<u64, 7> kWitnesses = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};

bool strong_probable_prime(const Montgomery& m, u64 n, u64 base, u64 d, unsigned s) {
  base %= n;
  if (base == 0) return true;
  const u64 one = m.one();
  const u64 minus_one = n - one;
  u64 x = m.to(1);
  u64 b = m.to(base);
  for (u64 e = d; e; e >>= 1) {
    if (e & 1) x = m.mul(x, b);
    b = m.mul(b, b);
  }
  if (x == one || x == minus_one) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = m.mul(x, x);
    if (x == minus_one) return true;
    if (x == one) return false;
  }
  return false;
}

// Brent's variant of Pollard rho on an odd composite n. Returns a divisor in
// (1, n) or n when the polynomial x^2 + c cycles without splitting.
u64 brent_rho(u64 n, u64 c) {
  const Montgomery m(n);
  const u64 cm = m.to(c);
  auto f = [&](u64 v) { return m.add(m.mul(v, v), cm); };
  auto diff = [](u64 a, u64 b) { return a > b ? a - b : b - a; };

  constexpr u64 kBatch = 128;
  u64 y = m.to(2);
  u64 x = y;
  u64 ys = y;
  u64 q = m.one();
  u64 g = 1;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = m.mul(q, diff(x, y));
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(diff(x, ys), n);
    } while (g == 1);
  }
  return g;
}

void split(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 r = isqrt(n);
  if (r * r == n) {
    split(r, out);
    split(r, out);
    return;
  }
  for (u64 c = 1;; ++c) {
    const u64 d = brent_rho(n, c);
    if (d != 1 && d != n) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
}

constexpr u64 kTrialBound = 1024;

}  // namespace

u64 Factorization::product() const {
  u64 v = 1;
  for (const auto& [p, e] : factors)
    for (unsigned i = 0; i < e; ++i) v *= p;
  return v;
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  for (; exp; exp >>= 1) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
  }
  if (old_r != 1) throw InvalidArgument("inv_mod: argument not invertible");
  old_s %= static_cast<__int128>(m);
  if (old_s < 0) old_s += m;
  return static_cast<u64>(old_s);
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 61 * 61) return true;
  const unsigned s = static_cast<unsigned>(std::countr_zero(n - 1));
  const u64 d = (n - 1) >> s;
  const Montgomery m(n);
  for (u64 a : kWitnesses)
    if (!strong_probable_prime(m, n, a, d, s)) return false;
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw InvalidArgument("factorize: n must be positive");
  Factorization f;
  f.n = n;
  if (const unsigned z = static_cast<unsigned>(std::countr_zero(n)); z > 0) {
    f.factors.push_back({2, z});
    n >>= z;
  }
  for (u64 p = 3; p < kTrialBound && p * p <= n; p += 2) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (n == 1) return f;
  if (n < kTrialBound * kTrialBound) {
    f.factors.push_back({n, 1});
    return f;
  }
  std::vector<u64> large;
  split(n, large);
  std::sort(large.begin(), large.end());
  for (u64 p : large) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

u64 tau(u64 n) {
  u64 t = 1;
  for (const auto& pe : factorize(n).factors) t *= pe.exponent + 1;
  return t;
}

unsigned big_omega(u64 n) {
  unsigned total = 0;
  for (const auto& pe : factorize(n).factors) total += pe.exponent;
  return total;
}

unsigned two_adic_valuation(u64 n) {
  if (n == 0) throw InvalidArgument("two_adic_valuation: n must be positive");
  return static_cast<unsigned>(std::countr_zero(n));
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

}  // namespace psl2::arith
