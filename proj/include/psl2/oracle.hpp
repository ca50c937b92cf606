#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psl2/invariants.hpp"

namespace psl2::oracle {

using ElementIndex = std::uint32_t;

struct OracleOptions {
  // Admit p = 17 and 19. Their lattices take minutes rather than seconds.
  bool allow_large = false;
  std::size_t subgroup_cap = 1'000'000;
};

// PSL2(p) as permutations of the projective line {0, ..., p-1, inf}, with inf
// stored as point p. Element 0 is the identity.
class PermGroup {
 public:
  u64 p() const { return p_; }
  unsigned degree() const { return degree_; }
  std::size_t order() const { return order_; }

  std::span<const std::uint16_t> element(ElementIndex x) const {
    return {perms_.data() + std::size_t{x} * degree_, degree_};
  }
  // Composition: (x * y)(pt) = x(y(pt)).
  ElementIndex mul(ElementIndex x, ElementIndex y) const { return table_[std::size_t{x} * order_ + y]; }
  ElementIndex inverse(ElementIndex x) const { return inverse_[x]; }
  unsigned element_order(ElementIndex x) const { return element_order_[x]; }
  static constexpr ElementIndex identity() { return 0; }
  std::span<const ElementIndex> generators() const { return generators_; }

  friend PermGroup build_psl2(u64 p, const OracleOptions& opts);

 private:
  u64 p_ = 0;
  unsigned degree_ = 0;
  std::size_t order_ = 0;
  std::vector<std::uint16_t> perms_;
  std::vector<std::uint16_t> table_;
  std::vector<ElementIndex> inverse_;
  std::vector<unsigned> element_order_;
  std::vector<ElementIndex> generators_;
};

// A subgroup as a bitset over element indices, plus a (not necessarily
// minimal) generating set.
class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(std::size_t group_order);

  bool contains(ElementIndex x) const { return (bits_[x >> 6] >> (x & 63)) & 1u; }
  void insert(ElementIndex x);
  std::size_t order() const { return order_; }
  std::vector<ElementIndex> members() const;  // ascending
  const std::vector<std::uint64_t>& bits() const { return bits_; }
  const std::vector<ElementIndex>& generators() const { return generators_; }
  void set_generators(std::vector<ElementIndex> gens) { generators_ = std::move(gens); }

  bool operator==(const Subgroup& other) const { return bits_ == other.bits_; }

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t order_ = 0;
  std::vector<ElementIndex> generators_;
};

struct OracleClass {
  Subgroup representative;
  std::vector<std::size_t> members;  // indices into the classified subgroup list
  u64 class_size = 0;
  u64 normaliser_order = 0;
  std::string label;
  SubgroupKind kind = SubgroupKind::CyclicPlus;
  bool excluded = false;  // trivial subgroup or the whole group

  bool self_normalising() const { return normaliser_order == representative.order(); }
};

// Throws InvalidArgument for p outside [3, 13], or [3, 19] with allow_large.
PermGroup build_psl2(u64 p, const OracleOptions& opts = {});

// Every subgroup exactly once, trivial subgroup and G included. Starts from
// the cyclic subgroups and joins each member with each cyclic subgroup until
// nothing new appears. Throws ResourceError past opts.subgroup_cap.
std::vector<Subgroup> enumerate_subgroups(const PermGroup& g, std::size_t subgroup_cap = 1'000'000);

// Subgroup generated by the given elements.
Subgroup generate(const PermGroup& g, std::span<const ElementIndex> gens);

// x^-1 H x.
Subgroup conjugate(const PermGroup& g, const Subgroup& h, ElementIndex x);

// |N_G(H)| by counting the x with x^-1 H x = H.
u64 normaliser_order(const PermGroup& g, const Subgroup& h);

struct TypeLabel {
  std::string label;
  SubgroupKind kind;
};

// Isomorphism type from order, cyclicity and the element-order histogram.
// Throws IntegrityError for a proper non-trivial subgroup that matches none of
// C_n, D_n, E_p:C_e, A4, S4, A5.
TypeLabel identify(const PermGroup& g, const Subgroup& h);

// Partitions a complete subgroup list into conjugacy classes.
std::vector<OracleClass> classify(const PermGroup& g, const std::vector<Subgroup>& subs);

// Classes (trivial and G excluded) grouped by label.
ClassCensus census_from_classes(u64 p, const std::vector<OracleClass>& classes);

struct OracleRun {
  PermGroup group;
  std::vector<Subgroup> subgroups;
  std::vector<OracleClass> classes;
  ClassCensus census;
};

OracleRun run(u64 p, const OracleOptions& opts = {});
ClassCensus oracle_census(u64 p, const OracleOptions& opts = {});

}  // namespace psl2::oracle
