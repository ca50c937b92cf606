#pragma once

// Slow, obviously-correct reference implementations used as test oracles.

#include <cstdint>
#include <vector>

namespace testref {

using u64 = std::uint64_t;

inline bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline u64 trial_tau(u64 n) {
  u64 count = 0;
  for (u64 d = 1; d * d <= n; ++d)
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  return count;
}

inline unsigned trial_omega(u64 n) {
  unsigned count = 0;
  for (u64 d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      n /= d;
      ++count;
    }
  return count + (n > 1 ? 1 : 0);
}

inline unsigned trial_v2(u64 n) {
  unsigned v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  return v;
}

inline std::vector<bool> eratosthenes(u64 n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<bool> prime(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    prime[i] = true;
    for (u64 j = i * i; j <= n; j += i) comp[j] = true;
  }
  return prime;
}

}  // namespace testref
