#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "psl2/invariants.hpp"

namespace psl2::heathbrown {

// Membership test for the set of primes p = 5 mod 72 with
// Omega(p-1) + Omega(p+1) <= 11 and Omega(p-1), Omega(p+1) <= 8.
struct HbCandidate {
  u64 p = 0;
  unsigned omega_minus = 0;  // Omega(p - 1)
  unsigned omega_plus = 0;   // Omega(p + 1)
  bool qualifies = false;
  std::optional<InvariantProfile> profile;  // p >= 5
  std::optional<Invariants> values;
};

inline constexpr u64 kModulus = 72;
inline constexpr u64 kResidue = 5;
inline constexpr unsigned kOmegaSumMax = 11;
inline constexpr unsigned kOmegaEachMax = 8;

// Throws InvalidArgument when p is not prime.
HbCandidate qualifies(u64 p);

// Qualifying primes up to limit (>= 77), ascending. Each is checked to have
// k = 0, l = 1, sigma = 0; a violation throws IntegrityError.
std::vector<HbCandidate> scan_hb(u64 limit, unsigned threads = 0);

struct UpperBounds {
  Invariants bounds;
  // Extremal profiles: distinct-prime allocations maximising i, c, n and s.
  InvariantProfile icn_profile;
  InvariantProfile s_profile;
};

// Worst cases of the closed forms over the profiles the congruence and the
// Omega conditions allow: k = 0, l = 1, sigma = 0, alpha = 1, and the odd
// prime budget split between (p+1)/2 and (p-1)/2 with all primes distinct.
UpperBounds derive_upper_bounds();

}  // namespace psl2::heathbrown
