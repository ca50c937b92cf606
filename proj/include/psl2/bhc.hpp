#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psl2/arith.hpp"

namespace psl2::bhc {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Integer polynomial in t, coefficients in ascending order of degree
// ({5, 12} is 12t + 5). Trailing zeros are trimmed; the zero polynomial is
// rejected.
class Polynomial {
 public:
  explicit Polynomial(std::vector<i64> coeffs);
  static Polynomial linear(i64 a, i64 b) { return Polynomial({b, a}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  i64 leading() const { return coeffs_.back(); }
  const std::vector<i64>& coeffs() const { return coeffs_; }
  long double eval(long double t) const;
  __int128 eval(i64 t) const;
  u64 eval_mod(u64 t, u64 p) const;

 private:
  std::vector<i64> coeffs_;
};

class PolynomialFamily {
 public:
  PolynomialFamily() = default;
  explicit PolynomialFamily(std::vector<Polynomial> polys) : polys_(std::move(polys)) {}
  static PolynomialFamily from_linear(std::span<const arith::LinearForm> forms);

  std::size_t size() const { return polys_.size(); }  // the exponent m in the local factors
  const std::vector<Polynomial>& polys() const { return polys_; }
  int total_degree() const;
  int max_degree() const;

 private:
  std::vector<Polynomial> polys_;
};

struct ShReport {
  bool positive_leading = false;
  bool all_irreducible = false;
  bool no_fixed_prime_divisor = false;
  std::optional<u64> failing_prime;

  bool passes() const { return positive_leading && all_irreducible && no_fixed_prime_divisor; }
};

// Necessary conditions for the family to take simultaneous prime values
// infinitely often. Degree >= 3 throws InvalidArgument.
ShReport check_sh(const PolynomialFamily& family);

// Number of distinct roots of the product polynomial modulo p (p if it
// vanishes identically). Uses residue enumeration below brute_threshold and
// root formulas above it.
u64 omega_roots(const PolynomialFamily& family, u64 p, u64 brute_threshold = 100);
u64 omega_roots_bruteforce(const PolynomialFamily& family, u64 p);
u64 omega_roots_formula(const PolynomialFamily& family, u64 p);

// (1 - 1/p)^-m (1 - omega(p)/p).
double local_factor(const PolynomialFamily& family, u64 p);

struct HlConstant {
  double value = 0;
  u64 truncation_bound = 0;
  double tail_bound_estimate = 0;
};

// Partial Euler product over primes p <= truncation, accumulated as a
// compensated sum of logs. tail_bound_estimate is value * m(m-1)/(P ln P),
// twice the leading term of the log tail -m(m-1)/2 * sum_{p>P} p^-2; a family
// with a quadratic member adds value * ln P / sqrt(P) for the first-order
// terms that no longer cancel. Both are heuristics, not proven bounds.
// Requires check_sh to pass and truncation >= 1000.
HlConstant hl_constant(const PolynomialFamily& family, u64 truncation, unsigned threads = 0);

struct BhcEstimate {
  double x = 0;
  double a = 0;
  HlConstant constant;
  double integral = 0;
  double e_value = 0;
  double quadrature_error_estimate = 0;
};

// Smallest integer t0 >= 0 from which every member is >= 2 and non-decreasing.
double lower_limit(const PolynomialFamily& family);

inline constexpr double kQuadratureTolerance = 1e-8;

// C * integral_a^x dt / prod_i ln f_i(t), by adaptive Gauss-Kronrod on the
// substitution t = a - 1 + e^u. Throws InvalidArgument for x <= a and
// QuadratureError if the relative tolerance is not reached.
BhcEstimate estimate_E(const PolynomialFamily& family, double x, const HlConstant& c);

// (E - q) / q.
double compare(u64 q, const BhcEstimate& e);

}  // namespace psl2::bhc
