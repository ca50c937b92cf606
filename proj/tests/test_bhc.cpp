#include <doctest.h>

#include <cmath>

#include "psl2/bhc.hpp"
#include "psl2/errors.hpp"
#include "psl2/search.hpp"

using namespace psl2;
using namespace psl2::bhc;

namespace {

PolynomialFamily fam(std::vector<std::vector<i64>> polys) {
  std::vector<Polynomial> out;
  for (auto& c : polys) out.emplace_back(std::move(c));
  return PolynomialFamily(std::move(out));
}

PolynomialFamily case_family(search::CaseId id) { return search::case_spec(id).family(); }

// Composite Simpson in u for t = a - 1 + e^u, long double throughout.
long double simpson(const PolynomialFamily& f, double a, double x, int n) {
  const long double upper = std::log1p(static_cast<long double>(x) - a);
  const long double h = upper / n;
  auto g = [&](long double u) {
    const long double t = a - 1.0L + std::exp(u);
    long double d = 1;
    for (const auto& p : f.polys()) d *= std::log(p.eval(t));
    return std::exp(u) / d;
  };
  long double sum = g(0) + g(upper);
  for (int i = 1; i < n; ++i) sum += g(i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3;
}

}  // namespace

TEST_SUITE("bhc") {

TEST_CASE("polynomials") {
  const Polynomial p({5, 12});
  CHECK(p.degree() == 1);
  CHECK(p.eval(i64{3}) == 41);
  CHECK(p.eval_mod(3, 7) == 41 % 7);
  CHECK(Polynomial({1, 0, 1, 0, 0}).degree() == 2);
  CHECK_THROWS_AS(Polynomial({0, 0}), InvalidArgument);
  CHECK(Polynomial::linear(12, 5).coeffs() == std::vector<i64>{5, 12});
}

TEST_CASE("omega by enumeration and by formula agree for p <= 97") {
  std::vector<PolynomialFamily> families;
  for (auto id : {search::CaseId::A, search::CaseId::B, search::CaseId::C, search::CaseId::D})
    families.push_back(case_family(id));
  families.push_back(fam({{0, 1}, {2, 1}}));
  families.push_back(fam({{1, 0, 1}}));
  families.push_back(fam({{-2, 0, 1}, {1, 2}}));
  families.push_back(fam({{1, 1, 1}, {3, 0, 2}}));
  families.push_back(fam({{0, 6}, {5, 0, 5}}));
  for (const auto& f : families)
    for (u64 p = 2; p <= 97; ++p) {
      if (!arith::is_prime(p)) continue;
      CAPTURE(p);
      REQUIRE(omega_roots_formula(f, p) == omega_roots_bruteforce(f, p));
    }
  // Large primes go through the formulas; spot-check against enumeration.
  for (u64 p : {101, 1009, 10007})
    for (const auto& f : families) REQUIRE(omega_roots(f, p) == omega_roots_bruteforce(f, p));
}

TEST_CASE("omega values for case a") {
  const auto f = case_family(search::CaseId::A);
  CHECK(omega_roots(f, 2) == 1);
  CHECK(omega_roots(f, 3) == 1);
  CHECK(omega_roots(f, 5) == 3);
  CHECK(omega_roots(f, 7) == 3);
}

TEST_CASE("necessary conditions") {
  CHECK(check_sh(case_family(search::CaseId::A)).passes());
  CHECK(check_sh(fam({{0, 1}, {2, 1}})).passes());
  CHECK(check_sh(fam({{1, 0, 1}})).passes());

  const ShReport consecutive = check_sh(fam({{0, 1}, {1, 1}}));
  CHECK_FALSE(consecutive.no_fixed_prime_divisor);
  CHECK(consecutive.failing_prime == 2);
  CHECK(check_sh(fam({{0, 1}, {2, 1}, {4, 1}})).failing_prime == 3);
  CHECK_FALSE(check_sh(fam({{-1, 0, 1}})).all_irreducible);   // (t-1)(t+1)
  CHECK_FALSE(check_sh(fam({{1, -1}})).positive_leading);
  CHECK_FALSE(check_sh(fam({{7}})).passes());
  CHECK_FALSE(check_sh(fam({{2, 2}})).passes());               // content 2
  CHECK_THROWS_AS(check_sh(fam({{1, 0, 0, 1}})), InvalidArgument);
}

TEST_CASE("known constants") {
  // Twin primes: 2 * prod_{p>2} (1 - 1/(p-1)^2).
  CHECK(hl_constant(fam({{0, 1}, {2, 1}}), 1'000'000).value == doctest::Approx(1.3203236316937391).epsilon(1e-6));
  // Prime triplets (t, t+2, t+6).
  CHECK(hl_constant(fam({{0, 1}, {2, 1}, {6, 1}}), 1'000'000).value ==
        doctest::Approx(2.8582485957192).epsilon(1e-6));
  // t^2 + 1; the product converges only conditionally.
  CHECK(hl_constant(fam({{1, 0, 1}}), 1'000'000).value == doctest::Approx(1.3728134628182).epsilon(2e-3));
}

TEST_CASE("case constants stabilise as the truncation grows") {
  for (auto id : {search::CaseId::A, search::CaseId::B}) {
    const auto f = case_family(id);
    const HlConstant c4 = hl_constant(f, 10'000), c5 = hl_constant(f, 100'000), c6 = hl_constant(f, 1'000'000);
    const double d45 = std::abs(c5.value - c4.value), d56 = std::abs(c6.value - c5.value);
    CHECK(d56 < d45);
    CHECK(d56 / c6.value < 1e-5);
    CHECK(c6.tail_bound_estimate < c5.tail_bound_estimate);
    CHECK(d56 < 2 * c5.tail_bound_estimate);
    CHECK(c6.value == doctest::Approx(5.7164973).epsilon(1e-6));
  }
  CHECK_THROWS_AS(hl_constant(case_family(search::CaseId::A), 999), InvalidArgument);
  CHECK_THROWS_AS(hl_constant(fam({{0, 1}, {1, 1}}), 10'000), InvalidArgument);
}

TEST_CASE("local factors near 1 for large p") {
  const auto f = case_family(search::CaseId::C);
  for (u64 p : arith::primes_in_range(101, 5000)) {
    const double lf = local_factor(f, p);
    REQUIRE(lf > 0.9);
    REQUIRE(lf < 1.1);
    REQUIRE(lf == doctest::Approx(std::pow(1 - 1.0 / p, -3.0) * (1 - 3.0 / p)).epsilon(1e-12));
  }
}

TEST_CASE("lower limits") {
  CHECK(lower_limit(case_family(search::CaseId::A)) == 1);
  CHECK(lower_limit(case_family(search::CaseId::B)) == 1);
  CHECK(lower_limit(case_family(search::CaseId::D)) == 2);
  CHECK(lower_limit(fam({{0, 1}, {2, 1}})) == 2);
  CHECK(lower_limit(fam({{1, -4, 1}})) == 5);  // t^2 - 4t + 1: value 1 at t = 4, 6 at t = 5
}

TEST_CASE("quadrature agrees with a fine Simpson rule") {
  const auto f = case_family(search::CaseId::A);
  const HlConstant c = hl_constant(f, 100'000);
  for (double x : {10.0, 1e3, 1e6, 1e9}) {
    const BhcEstimate e = estimate_E(f, x, c);
    CHECK(e.a == 1);
    CHECK(e.integral == doctest::Approx(static_cast<double>(simpson(f, 1, x, 200'000))).epsilon(1e-8));
    CHECK(e.e_value == doctest::Approx(c.value * e.integral));
  }
}

TEST_CASE("E is increasing in x") {
  const auto f = case_family(search::CaseId::B);
  const HlConstant c = hl_constant(f, 10'000);
  double prev = 0;
  for (double x = 2; x < 1e9; x *= 3.7) {
    const double e = estimate_E(f, x, c).e_value;
    REQUIRE(e > prev);
    prev = e;
  }
  CHECK_THROWS_AS(estimate_E(f, 1.0, c), InvalidArgument);
}

TEST_CASE("compare") {
  BhcEstimate e;
  e.e_value = 110;
  CHECK(compare(100, e) == doctest::Approx(0.1));
  CHECK_THROWS_AS(compare(0, e), InvalidArgument);
}

}
