#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "psl2/arith.hpp"
#include "psl2/bhc.hpp"
#include "psl2/invariants.hpp"

namespace psl2::search {

// The four ways of splitting 2 and 3 between the coprime halves (p+1)/2 and
// (p-1)/2 when both are otherwise prime:
//   a: (p+1)/2 = 3s, (p-1)/2 = 2r      b: (p+1)/2 = 2s, (p-1)/2 = 3r
//   c: (p+1)/2 = 6s, (p-1)/2 = r       d: (p+1)/2 = s,  (p-1)/2 = 6r
enum class CaseId { A, B, C, D };

std::string_view to_string(CaseId id);
std::optional<CaseId> parse_case(std::string_view name);

struct CaseSpec {
  CaseId id = CaseId::A;
  // Three forms in t. Index 0 is always p.
  std::array<arith::LinearForm, 3> forms;
  std::size_t s_index = 1;
  std::size_t r_index = 2;
  u64 plus_multiplier = 1;   // (p+1)/2 = plus_multiplier * s
  u64 minus_multiplier = 1;  // (p-1)/2 = minus_multiplier * r
  u64 p_floor = 37;          // hits count towards the uniform bounds only for p > p_floor

  const arith::LinearForm& p_form() const { return forms[0]; }
  const arith::LinearForm& s_form() const { return forms[s_index]; }
  const arith::LinearForm& r_form() const { return forms[r_index]; }
  bhc::PolynomialFamily family() const;
};

// Checks the defining identities for t = 0..1000 before returning; a failure
// throws IntegrityError.
CaseSpec case_spec(CaseId id);

inline constexpr Invariants kLowerBounds{17, 18, 6, 12};

struct TripleHit {
  CaseId case_id = CaseId::A;
  u64 t = 0;
  u64 p = 0;
  u64 s = 0;
  u64 r = 0;
  InvariantProfile profile;
  Invariants values;
  std::array<bool, 4> attains{};  // (i, c, s, n) equal to (17, 18, 6, 12)
  bool above_floor = false;        // p > 37

  bool attains_all() const { return attains[0] && attains[1] && attains[2] && attains[3]; }
};

struct ScanOptions {
  u64 hit_cap = 10'000;          // hits kept; q_count stays exact
  unsigned threads = 0;          // 0 = hardware concurrency
  u64 block_size = u64{1} << 18; // t values per block
  u64 presieve_bound = u64{1} << 15;
  // Called with (t values finished, t_max); may run on worker threads but is
  // serialised by the scanner.
  std::function<void(u64, u64)> progress;
};

struct SearchSummary {
  CaseId case_id = CaseId::A;
  u64 t_max = 0;
  u64 q_count = 0;                 // t in [1, t_max] with p, s, r all prime
  u64 sigma_alpha_zero_count = 0;  // p above the floor with sigma = alpha = 0
  std::vector<TripleHit> hits;     // ascending t, at most hit_cap
  bool hits_truncated = false;
};

u64 max_t(const CaseSpec& spec);  // largest t with every form value below 2^64

SearchSummary scan(const CaseSpec& spec, u64 t_max, const ScanOptions& opts = {});

// Recomputes (i, c, s, n) for the hit's prime and compares with the lower
// bounds. For cases a and b with s, r >= 7 also asserts sigma = alpha = 0, since
// |G| = 12psr is then prime to 8 and to 5.
std::array<bool, 4> verify_attainment(const TripleHit& hit);

// The same comparison for an arbitrary prime p >= 5.
std::array<bool, 4> attainment_for_prime(u64 p);

TripleHit make_hit(const CaseSpec& spec, u64 t);

}  // namespace psl2::search
