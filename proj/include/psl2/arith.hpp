#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace psl2::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimePower {
  u64 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

// Prime factorization of n, primes strictly increasing. n = 1 has no factors.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  u64 product() const;  // recomputes n from the factors (wrapping on overflow)
};

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 pow_mod(u64 base, u64 exp, u64 m);
// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 inv_mod(u64 a, u64 m);
u64 isqrt(u64 n);

// Deterministic for every 64-bit input.
bool is_prime(u64 n);

// Throws InvalidArgument for n = 0.
Factorization factorize(u64 n);

u64 tau(u64 n);
unsigned big_omega(u64 n);
unsigned two_adic_valuation(u64 n);

// All positive divisors of n, ascending.
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const Factorization& f);

struct SieveOptions {
  // Bytes of sieve array per segment; each byte covers one odd number.
  std::size_t segment_bytes = 256 * 1024;
  static constexpr std::size_t kMaxSegmentBytes = std::size_t{64} << 20;
};

// Calls visit(p) for every prime lo <= p <= hi in ascending order.
// Throws InvalidArgument when lo > hi or the segment size is out of range.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit,
                    const SieveOptions& opts = {});

std::vector<u64> primes_in_range(u64 lo, u64 hi, const SieveOptions& opts = {});

// Simple Eratosthenes up to n inclusive, for small bounds (base primes, tests).
std::vector<u64> small_primes(u64 n);

// A linear form a*t + b with a > 0.
struct LinearForm {
  u64 a = 1;
  u64 b = 0;
  u64 at(u64 t) const { return a * t + b; }
  bool operator==(const LinearForm&) const = default;
};

// Sieves the block t in [t_lo, t_hi) against a family of linear forms:
// survivors[t - t_lo] is nonzero iff no form value has a prime factor
// q <= bound. For t small enough that some value is <= bound, the entry is
// instead exact: nonzero iff every value is prime. Survivors still need a
// primality test when some value exceeds bound^2. Reusable across blocks.
class LinearFormSieve {
 public:
  LinearFormSieve(std::vector<LinearForm> forms, u64 bound);

  void sieve_block(u64 t_lo, u64 t_hi, std::vector<std::uint8_t>& survivors) const;

  std::span<const LinearForm> forms() const { return forms_; }
  u64 bound() const { return bound_; }

 private:
  std::vector<LinearForm> forms_;
  u64 bound_;
  // Wheel over the smallest primes, replicated by memcpy.
  std::vector<u64> wheel_primes_;
  u64 wheel_period_ = 1;
  std::vector<std::uint8_t> wheel_;
  // For each larger sieving prime, the residues of t at which some form
  // vanishes modulo it (deduplicated).
  struct Sieving {
    u64 q;
    std::vector<u64> roots;
  };
  std::vector<Sieving> sieving_;
  // t below this may have a form value equal to a sieving prime; those are
  // resolved by direct primality tests.
  u64 exact_below_ = 0;
};

}  // namespace psl2::arith
