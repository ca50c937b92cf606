#include "psl2/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "psl2/arith.hpp"
#include "psl2/errors.hpp"

namespace psl2::oracle {

namespace {

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& bits) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t w : bits) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using SubgroupIndex = std::unordered_map<std::vector<std::uint64_t>, std::size_t, BitsHash>;

Subgroup full_group(const PermGroup& g) {
  Subgroup all(g.order());
  for (ElementIndex x = 0; x < g.order(); ++x) all.insert(x);
  all.set_generators({g.generators().begin(), g.generators().end()});
  return all;
}

// <H, z> as a union of right cosets H*y. A subgroup larger than |G|/2 is G.
Subgroup join(const PermGroup& g, const Subgroup& h, const std::vector<ElementIndex>& h_members,
              ElementIndex z, const Subgroup& whole) {
  std::vector<ElementIndex> gens = h.generators();
  gens.push_back(z);
  Subgroup k = h;
  std::vector<ElementIndex> reps{PermGroup::identity()};
  const std::size_t half = g.order() / 2;
  for (std::size_t ri = 0; ri < reps.size(); ++ri) {
    for (ElementIndex x : gens) {
      const ElementIndex y = g.mul(reps[ri], x);
      if (k.contains(y)) continue;
      for (ElementIndex m : h_members) k.insert(g.mul(m, y));
      if (k.order() > half) return whole;
      reps.push_back(y);
    }
  }
  k.set_generators(std::move(gens));
  return k;
}

// Unordered element-order histogram: hist[d] = number of elements of order d.
std::map<unsigned, std::size_t> order_histogram(const PermGroup& g, const Subgroup& h) {
  std::map<unsigned, std::size_t> hist;
  for (ElementIndex x : h.members()) ++hist[g.element_order(x)];
  return hist;
}

}  // namespace

Subgroup::Subgroup(std::size_t group_order) : bits_((group_order + 63) / 64, 0) {}

void Subgroup::insert(ElementIndex x) {
  std::uint64_t& w = bits_[x >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (x & 63);
  if (!(w & mask)) {
    w |= mask;
    ++order_;
  }
}

std::vector<ElementIndex> Subgroup::members() const {
  std::vector<ElementIndex> out;
  out.reserve(order_);
  for (std::size_t wi = 0; wi < bits_.size(); ++wi) {
    for (std::uint64_t w = bits_[wi]; w; w &= w - 1)
      out.push_back(static_cast<ElementIndex>(wi * 64 + std::countr_zero(w)));
  }
  return out;
}

PermGroup build_psl2(u64 p, const OracleOptions& opts) {
  const u64 cap = opts.allow_large ? 19 : 13;
  if (p < 3 || p > cap || !arith::is_prime(p))
    throw InvalidArgument("oracle: p must be a prime in [3, " + std::to_string(cap) + "] (got " +
                          std::to_string(p) + ")" + (opts.allow_large || p > 19 ? "" : "; p = 17, 19 need the large-group opt-in"));

  PermGroup g;
  g.p_ = p;
  g.degree_ = static_cast<unsigned>(p + 1);
  const unsigned inf = static_cast<unsigned>(p);
  const std::size_t deg = g.degree_;

  // A Moebius map is determined by the images of 0, 1 and inf.
  auto key = [&](const std::uint16_t* perm) { return (perm[0] * deg + perm[1]) * deg + perm[inf]; };
  std::vector<std::int32_t> by_key(deg * deg * deg, -1);

  std::vector<std::uint16_t> perm(deg);
  auto add = [&](u64 a, u64 b, u64 c, u64 d) {
    for (u64 x = 0; x <= p; ++x) {
      u64 image;
      if (x == p) {
        image = c == 0 ? p : arith::mul_mod(a, arith::inv_mod(c, p), p);
      } else {
        const u64 den = (c * x + d) % p;
        image = den == 0 ? p : arith::mul_mod((a * x + b) % p, arith::inv_mod(den, p), p);
      }
      perm[x] = static_cast<std::uint16_t>(image);
    }
    const std::size_t k = key(perm.data());
    if (by_key[k] >= 0) return;
    by_key[k] = static_cast<std::int32_t>(g.perms_.size() / deg);
    g.perms_.insert(g.perms_.end(), perm.begin(), perm.end());
  };

  add(1, 0, 0, 1);
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b)
      for (u64 c = 0; c < p; ++c)
        for (u64 d = 0; d < p; ++d)
          if ((a * d + p * p - b * c) % p == 1) add(a, b, c, d);

  g.order_ = g.perms_.size() / deg;
  if (g.order_ != p * (p * p - 1) / 2)
    throw IntegrityError("oracle: wrong group order " + std::to_string(g.order_));

  const std::size_t n = g.order_;
  g.table_.resize(n * n);
  std::uint16_t img[3];
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint16_t* px = g.perms_.data() + x * deg;
    for (std::size_t y = 0; y < n; ++y) {
      const std::uint16_t* py = g.perms_.data() + y * deg;
      img[0] = px[py[0]];
      img[1] = px[py[1]];
      img[2] = px[py[inf]];
      g.table_[x * n + y] = static_cast<std::uint16_t>(by_key[(img[0] * deg + img[1]) * deg + img[2]]);
    }
  }

  g.inverse_.resize(n);
  g.element_order_.resize(n);
  for (ElementIndex x = 0; x < n; ++x) {
    unsigned ord = 1;
    ElementIndex inv = 0;  // ends as x^(ord-1)
    for (ElementIndex y = x; y != 0; y = g.mul(y, x)) {
      inv = y;
      ++ord;
    }
    g.element_order_[x] = ord;
    g.inverse_[x] = inv;
  }

  // x -> -1/x and x -> x + 1 generate SL2(Z), hence PSL2(p).
  auto index_of = [&](u64 a, u64 b, u64 c, u64 d) {
    const std::size_t before = g.perms_.size();
    add(a, b, c, d);
    if (g.perms_.size() != before) throw IntegrityError("oracle: generator outside the group");
    return static_cast<ElementIndex>(by_key[key(perm.data())]);
  };
  g.generators_ = {index_of(0, p - 1, 1, 0), index_of(1, 1, 0, 1)};
  return g;
}

Subgroup generate(const PermGroup& g, std::span<const ElementIndex> gens) {
  Subgroup h(g.order());
  h.insert(PermGroup::identity());
  std::vector<ElementIndex> frontier{PermGroup::identity()};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (ElementIndex x : gens) {
      const ElementIndex y = g.mul(frontier[i], x);
      if (!h.contains(y)) {
        h.insert(y);
        frontier.push_back(y);
      }
    }
  }
  h.set_generators({gens.begin(), gens.end()});
  return h;
}

std::vector<Subgroup> enumerate_subgroups(const PermGroup& g, std::size_t subgroup_cap) {
  std::vector<Subgroup> subs;
  SubgroupIndex index;
  auto admit = [&](Subgroup&& h) {
    if (index.contains(h.bits())) return;
    if (subs.size() >= subgroup_cap)
      throw ResourceError("oracle: more than " + std::to_string(subgroup_cap) + " subgroups");
    index.emplace(h.bits(), subs.size());
    subs.push_back(std::move(h));
  };

  std::vector<ElementIndex> cyclic_generators;
  for (ElementIndex x = 0; x < g.order(); ++x) {
    const ElementIndex gen[1] = {x};
    Subgroup h = generate(g, x == 0 ? std::span<const ElementIndex>{} : std::span<const ElementIndex>(gen));
    if (!index.contains(h.bits()) && x != 0) cyclic_generators.push_back(x);
    admit(std::move(h));
  }

  const Subgroup whole = full_group(g);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].order() == g.order()) continue;
    const Subgroup h = subs[i];
    const std::vector<ElementIndex> h_members = h.members();
    for (ElementIndex z : cyclic_generators) {
      if (h.contains(z)) continue;
      admit(join(g, h, h_members, z, whole));
    }
  }
  return subs;
}

Subgroup conjugate(const PermGroup& g, const Subgroup& h, ElementIndex x) {
  const ElementIndex xi = g.inverse(x);
  Subgroup out(g.order());
  for (ElementIndex m : h.members()) out.insert(g.mul(g.mul(xi, m), x));
  std::vector<ElementIndex> gens;
  for (ElementIndex m : h.generators()) gens.push_back(g.mul(g.mul(xi, m), x));
  out.set_generators(std::move(gens));
  return out;
}

u64 normaliser_order(const PermGroup& g, const Subgroup& h) {
  const std::vector<ElementIndex> test = h.generators().empty() ? h.members() : h.generators();
  u64 count = 0;
  for (ElementIndex x = 0; x < g.order(); ++x) {
    const ElementIndex xi = g.inverse(x);
    bool stable = true;
    for (ElementIndex m : test) {
      if (!h.contains(g.mul(g.mul(xi, m), x))) {
        stable = false;
        break;
      }
    }
    if (stable) ++count;
  }
  return count;
}

// Fingerprints: order, cyclicity, element-order histogram. Within the
// catalogue these never collide:
//  - p | |H| only for the Borel subgroups E_p:C_e (A4 = G at p = 3 and
//    A5 = G at p = 5 are excluded before we get here);
//  - D_2 is the only non-cyclic group of order 4;
//  - D_m (m >= 3) has an element of order m and m or m + 1 involutions, while
//    A4, S4, A5 have maximal element order 3, 4, 5 against 6, 12, 30 for the
//    dihedral groups of the same order.
TypeLabel identify(const PermGroup& g, const Subgroup& h) {
  const u64 p = g.p();
  const u64 plus = (p + 1) / 2;
  const u64 minus = (p - 1) / 2;
  const u64 n = h.order();
  const auto hist = order_histogram(g, h);
  const unsigned max_order = hist.rbegin()->first;
  auto count = [&](unsigned d) {
    auto it = hist.find(d);
    return it == hist.end() ? std::size_t{0} : it->second;
  };
  auto unrecognized = [&] {
    return IntegrityError("oracle: unrecognized subgroup type of order " + std::to_string(n) +
                          " in PSL2(" + std::to_string(p) + ")");
  };

  if (n % p == 0) {
    const u64 e = n / p;
    if (minus % e != 0 || count(static_cast<unsigned>(p)) != p - 1) throw unrecognized();
    return {affine_label(p, e), SubgroupKind::Affine};
  }
  if (max_order == n) {
    if (plus % n == 0) return {cyclic_label(n), SubgroupKind::CyclicPlus};
    if (minus % n == 0) return {cyclic_label(n), SubgroupKind::CyclicMinus};
    throw unrecognized();
  }
  if (n == 12 && max_order == 3 && count(3) == 8 && count(2) == 3) return {"A4", SubgroupKind::A4};
  if (n == 24 && max_order == 4 && count(2) == 9 && count(3) == 8 && count(4) == 6)
    return {"S4", SubgroupKind::S4};
  if (n == 60 && max_order == 5 && count(2) == 15 && count(3) == 20 && count(5) == 24)
    return {"A5", SubgroupKind::A5};
  if (n % 2 == 0) {
    const u64 m = n / 2;
    const std::size_t involutions = m + (m % 2 == 0 ? 1 : 0);
    const bool shape = m == 2 ? count(2) == 3 : (max_order == m && count(2) == involutions);
    if (shape) {
      if (plus % m == 0) return {dihedral_label(m), SubgroupKind::DihedralPlus};
      if (minus % m == 0) return {dihedral_label(m), SubgroupKind::DihedralMinus};
    }
  }
  throw unrecognized();
}

std::vector<OracleClass> classify(const PermGroup& g, const std::vector<Subgroup>& subs) {
  SubgroupIndex index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i].bits(), i);

  std::vector<OracleClass> classes;
  std::vector<bool> assigned(subs.size(), false);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (assigned[i]) continue;
    OracleClass cls;
    cls.representative = subs[i];
    cls.members = {i};
    assigned[i] = true;
    for (std::size_t qi = 0; qi < cls.members.size(); ++qi) {
      for (ElementIndex x : g.generators()) {
        const Subgroup conj = conjugate(g, subs[cls.members[qi]], x);
        auto it = index.find(conj.bits());
        if (it == index.end()) throw IntegrityError("oracle: subgroup list is not closed under conjugation");
        if (!assigned[it->second]) {
          assigned[it->second] = true;
          cls.members.push_back(it->second);
        }
      }
    }
    cls.class_size = cls.members.size();
    cls.normaliser_order = normaliser_order(g, cls.representative);
    if (cls.class_size * cls.normaliser_order != g.order())
      throw IntegrityError("oracle: orbit-stabiliser count failed");
    const std::size_t ord = cls.representative.order();
    if (ord == 1 || ord == g.order()) {
      cls.excluded = true;
      cls.label = ord == 1 ? "1" : "PSL2(" + std::to_string(g.p()) + ")";
    } else {
      TypeLabel t = identify(g, cls.representative);
      cls.label = std::move(t.label);
      cls.kind = t.kind;
    }
    classes.push_back(std::move(cls));
  }
  std::stable_sort(classes.begin(), classes.end(), [](const OracleClass& a, const OracleClass& b) {
    return a.representative.order() < b.representative.order();
  });
  return classes;
}

ClassCensus census_from_classes(u64 p, const std::vector<OracleClass>& classes) {
  ClassCensus out;
  out.p = p;
  std::map<std::string, std::size_t> slot;
  for (const auto& cls : classes) {
    if (cls.excluded) continue;
    auto [it, fresh] = slot.try_emplace(cls.label, out.entries.size());
    if (fresh) {
      out.entries.push_back({cls.label, cls.kind, cls.representative.order(), 1, cls.self_normalising()});
      continue;
    }
    ClassEntry& e = out.entries[it->second];
    if (e.self_normalising != cls.self_normalising())
      throw IntegrityError("oracle: classes labelled " + cls.label + " disagree on self-normalisation");
    ++e.num_classes;
  }
  for (const auto& e : out.entries)
    if (e.num_classes > 2)
      throw IntegrityError("oracle: " + std::to_string(e.num_classes) + " classes labelled " + e.label);
  return out;
}

OracleRun run(u64 p, const OracleOptions& opts) {
  OracleRun r{build_psl2(p, opts), {}, {}, {}};
  r.subgroups = enumerate_subgroups(r.group, opts.subgroup_cap);
  r.classes = classify(r.group, r.subgroups);
  r.census = census_from_classes(p, r.classes);
  return r;
}

ClassCensus oracle_census(u64 p, const OracleOptions& opts) { return run(p, opts).census; }

}  // namespace psl2::oracle
