#pragma once

#include <shared_mutex>
#include <unordered_map>

#include "fibgcd/arith.hpp"

namespace fibgcd {

// z(n) is the rank of appearance: the least k >= 1 with n | F_k.
// ell(n) = lcm(n, z(n)).
struct RankInfo {
  u64 n = 1;
  u64 z = 1;
  u64 ell = 1;
};

// Per-prime rank data. nu is the largest e with p^e | F_{z(p)}; it drives the
// prime-power lifting and is computed, never assumed to be 1, so hypothetical
// Wall-Sun-Sun primes would still be handled correctly.
struct PrimeRankEntry {
  u64 p = 2;
  u64 z_p = 3;
  u32 nu = 1;
};

// Legendre symbol (p/5): 0 iff p = 5, +1 iff p = +-1 (mod 5),
// -1 iff p = +-2 (mod 5). Requires p prime.
int legendre5(u64 p);

// Computes z and ell, memoizing z(p) in a shared concurrent cache (density
// surveys hit the same small primes over and over). All methods are safe to
// call from any number of threads; duplicate concurrent computation of the
// same prime is possible and idempotent.
class RankEvaluator {
 public:
  explicit RankEvaluator(const SpfTable* spf = nullptr, FactorConfig cfg = {})
      : spf_(spf), cfg_(cfg) {}

  RankEvaluator(const RankEvaluator&) = delete;
  RankEvaluator& operator=(const RankEvaluator&) = delete;

  // z(p) for prime p, via divisor descent from p - (p/5)  (z(5) = 5).
  u64 rank_prime(u64 p);

  // z(p) together with the lifting exponent nu.
  PrimeRankEntry prime_entry(u64 p);

  // z(p^e). Requires p^e < 2^63.
  u64 rank_prime_power(u64 p, u32 e);

  // z(n) = lcm of z(p^e) over the prime powers of n; z(1) = 1.
  u64 rank(u64 n);

  // ell(n) = lcm(n, z(n)).
  u64 ell(u64 n);

  RankInfo rank_info(u64 n);

  const SpfTable* spf_table() const { return spf_; }
  const FactorConfig& factor_config() const { return cfg_; }

 private:
  struct Entry {
    u64 z_p = 0;
    u32 nu = 0;  // 0 = not computed yet
  };

  u64 compute_rank_prime(u64 p) const;
  u32 compute_nu(u64 p, u64 z_p) const;

  const SpfTable* spf_;
  FactorConfig cfg_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<u64, Entry> cache_;
};

}  // namespace fibgcd
