#include "psl2/invariants.hpp"

#include <map>

#include "psl2/arith.hpp"
#include "psl2/errors.hpp"
#include "psl2/rational.hpp"

namespace psl2 {

std::string_view to_string(SubgroupKind kind) {
  switch (kind) {
    case SubgroupKind::CyclicPlus: return "CyclicPlus";
    case SubgroupKind::DihedralPlus: return "DihedralPlus";
    case SubgroupKind::CyclicMinus: return "CyclicMinus";
    case SubgroupKind::DihedralMinus: return "DihedralMinus";
    case SubgroupKind::Affine: return "Affine";
    case SubgroupKind::A4: return "A4";
    case SubgroupKind::S4: return "S4";
    case SubgroupKind::A5: return "A5";
  }
  return "?";
}

std::string cyclic_label(u64 n) { return "C" + std::to_string(n); }
std::string dihedral_label(u64 n) { return "D" + std::to_string(n); }
std::string affine_label(u64 p, u64 e) { return "E" + std::to_string(p) + ":C" + std::to_string(e); }

Invariants ClassCensus::aggregates() const {
  Invariants v;
  for (const auto& e : entries) {
    ++v.i;
    v.c += e.num_classes;
    if (e.self_normalising)
      v.s += e.num_classes;
    else
      v.n += e.num_classes;
  }
  return v;
}

std::vector<std::string> census_diff(const ClassCensus& lhs, const ClassCensus& rhs) {
  std::map<std::string, const ClassEntry*> left, right;
  for (const auto& e : lhs.entries) left[e.label] = &e;
  for (const auto& e : rhs.entries) right[e.label] = &e;
  auto describe = [](const ClassEntry& e) {
    return std::to_string(e.num_classes) + (e.self_normalising ? " SN" : " non-SN");
  };
  std::vector<std::string> out;
  for (const auto& [label, e] : left) {
    auto it = right.find(label);
    if (it == right.end()) {
      out.push_back("- " + label + " (" + describe(*e) + ")");
    } else if (e->num_classes != it->second->num_classes ||
               e->self_normalising != it->second->self_normalising) {
      out.push_back("~ " + label + " (" + describe(*e) + " vs " + describe(*it->second) + ")");
    }
  }
  for (const auto& [label, e] : right)
    if (!left.contains(label)) out.push_back("+ " + label + " (" + describe(*e) + ")");
  return out;
}

}  // namespace psl2

namespace psl2::invariants {

namespace {

void check_profile(const InvariantProfile& prof) {
  if ((prof.k == 0) == (prof.l == 0))
    throw InvalidArgument("profile: exactly one of k, l must be zero");
  if (prof.sigma > 1 || prof.alpha > 1) throw InvalidArgument("profile: sigma, alpha must be 0 or 1");
  if (prof.delta % (prof.k + 1) != 0 || prof.epsilon % (prof.l + 1) != 0)
    throw InvalidArgument("profile: divisor counts incompatible with 2-adic valuations");
}

u64 require_integer(const Rational& r, const char* what) {
  const auto v = r.as_integer();
  if (!v || *v < 0)
    throw IntegrityError(std::string(what) + ": non-integral or negative value " +
                         std::to_string(r.num()) + "/" + std::to_string(r.den()));
  return static_cast<u64>(*v);
}

Rational rat(u64 v) { return Rational(static_cast<std::int64_t>(v)); }
Rational rat(unsigned a, unsigned b) { return Rational(a, b); }

}  // namespace

InvariantProfile profile(u64 p) {
  if (p < 5) throw InvalidArgument("profile: p must be a prime >= 5 (got " + std::to_string(p) + ")");
  if (!arith::is_prime(p)) throw InvalidArgument("profile: " + std::to_string(p) + " is not prime");
  const u64 plus = (p + 1) / 2;
  const u64 minus = (p - 1) / 2;
  InvariantProfile prof;
  prof.p = p;
  prof.delta = arith::tau(plus);
  prof.epsilon = arith::tau(minus);
  prof.k = arith::two_adic_valuation(plus);
  prof.l = arith::two_adic_valuation(minus);
  prof.sigma = (p % 8 == 1 || p % 8 == 7) ? 1 : 0;
  prof.alpha = (p % 5 == 1 || p % 5 == 4) ? 1 : 0;
  check_profile(prof);
  return prof;
}

InvariantProfile synthetic_profile(u64 delta, u64 epsilon, unsigned k, unsigned l, unsigned sigma,
                                   unsigned alpha) {
  InvariantProfile prof{0, delta, epsilon, k, l, sigma, alpha};
  check_profile(prof);
  return prof;
}

u64 i_count(const InvariantProfile& prof) {
  return 2 * prof.delta + 3 * prof.epsilon - 3 + prof.sigma + prof.alpha;
}

u64 c_count(const InvariantProfile& prof) {
  const Rational c = (rat(2) + rat(prof.k, prof.k + 1)) * rat(prof.delta) +
                     (rat(3) + rat(prof.l, prof.l + 1)) * rat(prof.epsilon) - rat(4) +
                     rat(3 * prof.sigma) + rat(2 * prof.alpha);
  return require_integer(c, "c_count");
}

u64 s_count(const InvariantProfile& prof) {
  const Rational s = rat(prof.delta) * Rational(1, prof.k + 1) +
                     rat(prof.epsilon) * Rational(1, prof.l + 1) + rat(2 * (prof.sigma + prof.alpha));
  return require_integer(s, "s_count");
}

u64 n_count(const InvariantProfile& prof) {
  const auto k = static_cast<std::int64_t>(prof.k);
  const auto l = static_cast<std::int64_t>(prof.l);
  const Rational n = (rat(2) + Rational(k - 1, k + 1)) * rat(prof.delta) +
                     (rat(3) + Rational(l - 1, l + 1)) * rat(prof.epsilon) - rat(4) + rat(prof.sigma);
  const u64 value = require_integer(n, "n_count");
  if (value + s_count(prof) != c_count(prof))
    throw IntegrityError("n_count: n != c - s for p = " + std::to_string(prof.p));
  return value;
}

Invariants evaluate(const InvariantProfile& prof) {
  return {i_count(prof), c_count(prof), s_count(prof), n_count(prof)};
}

ClassCensus census(u64 p) {
  const InvariantProfile prof = profile(p);
  const u64 plus = (p + 1) / 2;
  const u64 minus = (p - 1) / 2;
  ClassCensus out;
  out.p = p;

  auto add_torus = [&](u64 half, SubgroupKind cyc, SubgroupKind dih) {
    for (u64 d : arith::divisors(half)) {
      if (d == 1) continue;
      const bool odd_quotient = (half / d) % 2 == 1;
      out.entries.push_back({cyclic_label(d), cyc, d, 1, false});
      out.entries.push_back({dihedral_label(d), dih, 2 * d, odd_quotient ? 1u : 2u, d > 2 && odd_quotient});
    }
  };
  add_torus(plus, SubgroupKind::CyclicPlus, SubgroupKind::DihedralPlus);
  add_torus(minus, SubgroupKind::CyclicMinus, SubgroupKind::DihedralMinus);

  for (u64 e : arith::divisors(minus))
    out.entries.push_back({affine_label(p, e), SubgroupKind::Affine, p * e, 1, e == minus});

  out.entries.push_back({"A4", SubgroupKind::A4, 12, prof.sigma ? 2u : 1u, prof.sigma == 0});
  if (prof.sigma) out.entries.push_back({"S4", SubgroupKind::S4, 24, 2, true});
  if (prof.alpha) out.entries.push_back({"A5", SubgroupKind::A5, 60, 2, true});

  if (out.aggregates() != evaluate(prof))
    throw IntegrityError("census: aggregates disagree with the closed forms for p = " + std::to_string(p));
  return out;
}

}  // namespace psl2::invariants
