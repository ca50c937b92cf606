#include "psl2/bhc.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>

#include "psl2/errors.hpp"
#include "psl2/parallel.hpp"

namespace psl2::bhc {

namespace {

i64 mod_signed(i64 v, u64 p) {
  const i64 r = v % static_cast<i64>(p);
  return r < 0 ? r + static_cast<i64>(p) : r;
}

// Neumaier summation in long double.
struct CompensatedSum {
  long double sum = 0;
  long double carry = 0;
  void add(long double v) {
    const long double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  long double value() const { return sum + carry; }
};

// Square root of n modulo an odd prime p, n a quadratic residue (Tonelli-Shanks).
u64 sqrt_mod(u64 n, u64 p) {
  n %= p;
  if (n == 0) return 0;
  if (p % 4 == 3) return arith::pow_mod(n, (p + 1) / 4, p);
  u64 q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (arith::pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s;
  u64 c = arith::pow_mod(z, q, p);
  u64 t = arith::pow_mod(n, q, p);
  u64 r = arith::pow_mod(n, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    for (u64 tt = t; tt != 1; tt = arith::mul_mod(tt, tt, p)) ++i;
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = arith::mul_mod(b, b, p);
    m = i;
    c = arith::mul_mod(b, b, p);
    t = arith::mul_mod(t, c, p);
    r = arith::mul_mod(r, b, p);
  }
  return r;
}

// Appends the roots mod p of one polynomial; returns false if it vanishes
// identically mod p.
bool roots_mod(const Polynomial& f, u64 p, std::vector<u64>& roots) {
  std::vector<u64> c;
  for (i64 v : f.coeffs()) c.push_back(static_cast<u64>(mod_signed(v, p)));
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) return false;
  if (c.size() == 1) return true;
  if (c.size() == 2) {
    roots.push_back(arith::mul_mod((p - c[0]) % p, arith::inv_mod(c[1], p), p));
    return true;
  }
  if (c.size() == 3 && p == 2) {
    for (u64 t = 0; t < 2; ++t)
      if (f.eval_mod(t, 2) == 0) roots.push_back(t);
    return true;
  }
  if (c.size() != 3) throw InvalidArgument("omega_roots: unsupported degree");
  // a t^2 + b t + c0 with p odd.
  const u64 a = c[2], b = c[1], c0 = c[0];
  const u64 disc = (arith::mul_mod(b, b, p) + p - arith::mul_mod(4 % p, arith::mul_mod(a, c0, p), p)) % p;
  const u64 inv2a = arith::inv_mod(arith::mul_mod(2, a, p), p);
  const u64 minus_b = (p - b) % p;
  if (disc == 0) {
    roots.push_back(arith::mul_mod(minus_b, inv2a, p));
  } else if (arith::pow_mod(disc, (p - 1) / 2, p) == 1) {
    const u64 root = sqrt_mod(disc, p);
    roots.push_back(arith::mul_mod((minus_b + root) % p, inv2a, p));
    roots.push_back(arith::mul_mod((minus_b + p - root) % p, inv2a, p));
  }
  return true;
}

bool is_square(__int128 v) {
  if (v < 0) return false;
  if (v > static_cast<__int128>(~u64{0})) {
    // Discriminants of 64-bit coefficients can exceed 2^64; use long double plus correction.
    __int128 r = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v;
  }
  const u64 r = arith::isqrt(static_cast<u64>(v));
  return static_cast<__int128>(r) * r == v;
}

}  // namespace

Polynomial::Polynomial(std::vector<i64> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) throw InvalidArgument("Polynomial: zero polynomial");
}

long double Polynomial::eval(long double t) const {
  long double v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * t + static_cast<long double>(*it);
  return v;
}

__int128 Polynomial::eval(i64 t) const {
  __int128 v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * t + *it;
  return v;
}

u64 Polynomial::eval_mod(u64 t, u64 p) const {
  u64 v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    v = (arith::mul_mod(v, t % p, p) + static_cast<u64>(mod_signed(*it, p))) % p;
  return v;
}

PolynomialFamily PolynomialFamily::from_linear(std::span<const arith::LinearForm> forms) {
  std::vector<Polynomial> polys;
  for (const auto& f : forms) polys.push_back(Polynomial::linear(static_cast<i64>(f.a), static_cast<i64>(f.b)));
  return PolynomialFamily(std::move(polys));
}

int PolynomialFamily::total_degree() const {
  int d = 0;
  for (const auto& f : polys_) d += f.degree();
  return d;
}

int PolynomialFamily::max_degree() const {
  int d = 0;
  for (const auto& f : polys_) d = std::max(d, f.degree());
  return d;
}

ShReport check_sh(const PolynomialFamily& family) {
  if (family.size() == 0) throw InvalidArgument("check_sh: empty family");
  ShReport rep;
  rep.positive_leading = true;
  rep.all_irreducible = true;
  for (const auto& f : family.polys()) {
    if (f.degree() >= 3) throw InvalidArgument("check_sh: unsupported degree " + std::to_string(f.degree()));
    rep.positive_leading = rep.positive_leading && f.leading() > 0;
    if (f.degree() == 0) {
      rep.all_irreducible = false;
    } else if (f.degree() == 2) {
      const auto& c = f.coeffs();
      const __int128 disc = static_cast<__int128>(c[1]) * c[1] - static_cast<__int128>(4) * c[2] * c[0];
      if (is_square(disc)) rep.all_irreducible = false;
    }
  }

  // A prime p > deg(f) kills f identically only if it divides every
  // coefficient of f, i.e. (Gauss) the content of some member.
  std::vector<u64> candidates;
  for (u64 q : arith::small_primes(static_cast<u64>(family.total_degree()))) {
    bool hits_every_residue = true;
    for (u64 t = 0; t < q && hits_every_residue; ++t) {
      u64 prod = 1;
      for (const auto& f : family.polys()) prod = prod * f.eval_mod(t, q) % q;
      hits_every_residue = prod == 0;
    }
    if (hits_every_residue) candidates.push_back(q);
  }
  for (const auto& f : family.polys()) {
    u64 content = 0;
    for (i64 v : f.coeffs()) content = std::gcd(content, static_cast<u64>(v < 0 ? -v : v));
    if (content > 1)
      for (const auto& pe : arith::factorize(content).factors) candidates.push_back(pe.prime);
  }
  rep.no_fixed_prime_divisor = candidates.empty();
  if (!candidates.empty()) rep.failing_prime = *std::min_element(candidates.begin(), candidates.end());
  return rep;
}

u64 omega_roots_bruteforce(const PolynomialFamily& family, u64 p) {
  u64 count = 0;
  for (u64 t = 0; t < p; ++t) {
    for (const auto& f : family.polys()) {
      if (f.eval_mod(t, p) == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

u64 omega_roots_formula(const PolynomialFamily& family, u64 p) {
  std::vector<u64> roots;
  for (const auto& f : family.polys())
    if (!roots_mod(f, p, roots)) return p;
  std::sort(roots.begin(), roots.end());
  return static_cast<u64>(std::unique(roots.begin(), roots.end()) - roots.begin());
}

u64 omega_roots(const PolynomialFamily& family, u64 p, u64 brute_threshold) {
  return p < brute_threshold ? omega_roots_bruteforce(family, p) : omega_roots_formula(family, p);
}

double local_factor(const PolynomialFamily& family, u64 p) {
  const long double m = static_cast<long double>(family.size());
  const long double inv = 1.0L / static_cast<long double>(p);
  const long double w = static_cast<long double>(omega_roots(family, p));
  return static_cast<double>(std::pow(1.0L - inv, -m) * (1.0L - w * inv));
}

HlConstant hl_constant(const PolynomialFamily& family, u64 truncation, unsigned threads) {
  if (truncation < 1000) throw InvalidArgument("hl_constant: truncation bound must be at least 1000");
  const ShReport sh = check_sh(family);
  if (!sh.passes()) throw InvalidArgument("hl_constant: family fails the Schinzel conditions");

  const long double m = static_cast<long double>(family.size());
  constexpr u64 kBlock = u64{1} << 20;
  const std::size_t n_blocks = static_cast<std::size_t>((truncation - 1) / kBlock + 1);
  std::vector<CompensatedSum> partial(n_blocks);
  for_each_block(n_blocks, threads, [&](std::size_t b) {
    const u64 lo = 2 + b * kBlock;
    const u64 hi = std::min(truncation, lo + kBlock - 1);
    CompensatedSum& acc = partial[b];
    arith::for_each_prime(lo, hi, [&](u64 p) {
      const long double inv = 1.0L / static_cast<long double>(p);
      const long double w = static_cast<long double>(omega_roots(family, p));
      acc.add(-m * std::log1p(-inv) + std::log1p(-w * inv));
    });
  });
  CompensatedSum total;
  for (const auto& part : partial) {
    total.add(part.sum);
    total.add(part.carry);
  }

  HlConstant c;
  c.truncation_bound = truncation;
  c.value = static_cast<double>(std::exp(total.value()));
  const double P = static_cast<double>(truncation);
  const double mm = static_cast<double>(family.size());
  double tail = mm * (mm - 1) / (P * std::log(P));
  if (family.max_degree() >= 2) tail += std::log(P) / std::sqrt(P);
  c.tail_bound_estimate = c.value * tail;
  return c;
}

double lower_limit(const PolynomialFamily& family) {
  constexpr i64 kSearch = 1'000'000;
  for (i64 t = 0; t < kSearch; ++t) {
    bool ok = true;
    for (const auto& f : family.polys()) {
      const auto& c = f.coeffs();
      const __int128 slope = f.degree() == 2 ? 2 * static_cast<__int128>(c[2]) * t + c[1]
                                             : (f.degree() == 1 ? c[1] : 0);
      if (f.eval(t) < 2 || slope < 0) {
        ok = false;
        break;
      }
    }
    if (ok) return static_cast<double>(t);
  }
  throw InvalidArgument("lower_limit: no admissible start below 10^6");
}

BhcEstimate estimate_E(const PolynomialFamily& family, double x, const HlConstant& c) {
  const double a = lower_limit(family);
  if (!(x > a)) throw InvalidArgument("estimate_E: x must exceed the lower limit a");

  // With t = a - 1 + e^u the integrand is smooth in u and the range is short.
  auto integrand = [&](double u) {
    const long double eu = std::exp(static_cast<long double>(u));
    const long double t = static_cast<long double>(a) - 1.0L + eu;
    long double denom = 1.0L;
    for (const auto& f : family.polys()) denom *= std::log(f.eval(t));
    return static_cast<double>(eu / denom);
  };
  const double upper = std::log1p(x - a);
  double error = 0;
  double l1 = 0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, upper, 30, kQuadratureTolerance, &error, &l1);
  if (!(error <= kQuadratureTolerance * l1 * (1 + 1e-12)) && error > 0)
    throw QuadratureError("estimate_E: quadrature did not converge", error);

  BhcEstimate est;
  est.x = x;
  est.a = a;
  est.constant = c;
  est.integral = integral;
  est.e_value = c.value * integral;
  est.quadrature_error_estimate = error;
  return est;
}

double compare(u64 q, const BhcEstimate& e) {
  if (q == 0) throw InvalidArgument("compare: q must be positive");
  const double qd = static_cast<double>(q);
  return (e.e_value - qd) / qd;
}

}  // namespace psl2::bhc
