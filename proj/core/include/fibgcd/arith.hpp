#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fibgcd {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Every input and result handled by the library lives in [1, 2^63).
// Intermediate products are computed in 128 bits, so nothing wraps as long
// as operands respect this bound.
inline constexpr u64 kNaturalMax = (u64{1} << 63) - 1;

// A result left [1, 2^63).
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// The rho factorizer ran out of retries (see FactorConfig::rho_budget).
class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Consecutive Fibonacci residues (F_k, F_{k+1}) mod `modulus`, under the
// convention F_0 = 0, F_1 = 1.
struct FibPair {
  u64 k = 0;
  u64 modulus = 1;
  u64 f_k = 0;   // F_k mod modulus
  u64 f_k1 = 0;  // F_{k+1} mod modulus
};

// (F_k mod m, F_{k+1} mod m) by fast doubling, O(log k) steps.
// m = 1 gives (0, 0). Requires 1 <= m <= kNaturalMax.
FibPair fib_pair_mod(u64 k, u64 m);

// gcd with gcd(a, 0) = a. Rejects gcd(0, 0).
u64 gcd(u64 a, u64 b);

// lcm of two positive integers; throws OverflowError instead of wrapping
// once the result would reach 2^63.
u64 lcm_checked(u64 a, u64 b);

// Deterministic Miller-Rabin (fixed witness set), exact for all 64-bit n.
bool is_prime(u64 n);

struct PrimePower {
  u64 prime = 0;
  u32 exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Complete factorization of n; primes strictly increasing and the product of
// prime^exponent reassembles n. n = 1 has an empty factor list.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;
};

// Knobs for the randomized part of factorize(). The seed makes runs
// reproducible; rho parameters are derived from (seed, n) only, so results
// do not depend on call order or thread schedule.
struct FactorConfig {
  u64 seed = 0x9e3779b97f4a7c15ull;
  int rho_budget = 64;  // perturbed rho attempts before FactorizationError
};

// Default ceiling for sieve sizes: 2^28 u32 entries = 1 GiB.
inline constexpr u64 kSpfLimitCap = u64{1} << 28;

// Smallest-prime-factor table for 2..limit (linear sieve).
// Immutable after construction; safe to share across threads by reference.
class SpfTable {
 public:
  explicit SpfTable(u64 limit, u64 limit_cap = kSpfLimitCap);

  u64 limit() const { return limit_; }

  // Smallest prime factor of i, for 2 <= i <= limit. spf(p) == p iff p prime.
  u64 spf(u64 i) const {
    if (i < 2 || i > limit_) {
      throw std::domain_error("SpfTable::spf: index out of range");
    }
    return spf_[i];
  }

  bool is_prime(u64 i) const { return spf(i) == i; }

 private:
  u64 limit_;
  std::vector<u32> spf_;
};

SpfTable sieve_spf(u64 limit, u64 limit_cap = kSpfLimitCap);

// Factors n. Uses the table when n <= spf->limit(); otherwise trial division
// by small primes followed by Brent's rho. Every emitted prime is certified
// by is_prime; a composite is never reported as prime.
Factorization factorize(u64 n, const SpfTable* spf = nullptr,
                        const FactorConfig& cfg = {});

// Primes <= limit, ascending (odd-only Eratosthenes). limit < 2 gives {}.
std::vector<u64> primes_up_to(u64 limit, u64 limit_cap = kSpfLimitCap);

}  // namespace fibgcd
