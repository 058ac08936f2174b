#include "fibgcd/fib_rank.hpp"

#include <mutex>
#include <string>

namespace fibgcd {

namespace {

void require_prime(u64 p, const char* what) {
  if (!is_prime(p)) {
    throw std::domain_error(std::string(what) + ": " + std::to_string(p) +
                            " is not prime");
  }
}

// p^e, or throws OverflowError past 2^63 - 1.
u64 checked_pow(u64 p, u32 e) {
  u128 r = 1;
  for (u32 i = 0; i < e; ++i) {
    r *= p;
    if (r > kNaturalMax) {
      throw OverflowError("prime power " + std::to_string(p) + "^" +
                          std::to_string(e) + " exceeds 2^63 - 1");
    }
  }
  return static_cast<u64>(r);
}

}  // namespace

int legendre5(u64 p) {
  require_prime(p, "legendre5");
  switch (p % 5) {
    case 0:
      return 0;  // only p = 5, p being prime
    case 1:
    case 4:
      return 1;
    default:
      return -1;
  }
}

u64 RankEvaluator::rank_prime(u64 p) {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second.z_p;
  }
  require_prime(p, "rank_prime");
  const u64 z = compute_rank_prime(p);
  std::unique_lock lock(mutex_);
  return cache_.try_emplace(p, Entry{z, 0}).first->second.z_p;
}

PrimeRankEntry RankEvaluator::prime_entry(u64 p) {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(p);
    if (it != cache_.end() && it->second.nu != 0) {
      return PrimeRankEntry{p, it->second.z_p, it->second.nu};
    }
  }
  const u64 z = rank_prime(p);
  const u32 nu = compute_nu(p, z);
  std::unique_lock lock(mutex_);
  Entry& e = cache_[p];
  e.z_p = z;
  if (e.nu == 0) e.nu = nu;
  return PrimeRankEntry{p, e.z_p, e.nu};
}

u64 RankEvaluator::compute_rank_prime(u64 p) const {
  if (p == 5) return 5;
  // z(p) divides M = p - (p/5); strip prime factors of M while the quotient
  // still has p | F_M. What is left is the least such index.
  u64 m = legendre5(p) == 1 ? p - 1 : p + 1;
  const Factorization fac = factorize(m, spf_, cfg_);
  for (const PrimePower& pp : fac.factors) {
    for (u32 i = 0; i < pp.exponent; ++i) {
      const u64 candidate = m / pp.prime;
      if (fib_pair_mod(candidate, p).f_k == 0) {
        m = candidate;
      } else {
        break;
      }
    }
  }
  return m;
}

u32 RankEvaluator::compute_nu(u64 p, u64 z_p) const {
  // nu = v_p(F_{z(p)}), probed with growing prime-power moduli. The probe
  // stops once p^(nu+1) would leave the 63-bit range; any legal query
  // p^e < 2^63 then has e <= nu and gets the same answer as the true nu.
  u32 nu = 1;
  u128 pw = u128(p) * p;
  while (pw <= kNaturalMax &&
         fib_pair_mod(z_p, static_cast<u64>(pw)).f_k == 0) {
    ++nu;
    pw *= p;
  }
  return nu;
}

u64 RankEvaluator::rank_prime_power(u64 p, u32 e) {
  if (e == 0) throw std::domain_error("rank_prime_power: exponent must be >= 1");
  checked_pow(p, e);  // enforce p^e < 2^63
  if (p == 2) {
    // The odd-prime lifting rule breaks at p = 2 because v_2(F_n) jumps from
    // 1 to 3 between n = 3 and n = 6 (F_3 = 2, F_6 = 8). Exact values:
    // z(2) = 3, z(4) = z(8) = 6, z(2^e) = 3 * 2^(e-2) for e >= 3.
    if (e == 1) return 3;
    if (e == 2) return 6;
    return u64{3} << (e - 2);
  }
  if (e == 1) return rank_prime(p);
  const PrimeRankEntry entry = prime_entry(p);
  if (e <= entry.nu) return entry.z_p;
  const u64 lift = checked_pow(p, e - entry.nu);
  const u128 z = u128(entry.z_p) * lift;
  if (z > kNaturalMax) {
    throw OverflowError("z(" + std::to_string(p) + "^" + std::to_string(e) +
                        ") exceeds 2^63 - 1");
  }
  return static_cast<u64>(z);
}

u64 RankEvaluator::rank(u64 n) {
  if (n == 0 || n > kNaturalMax) {
    throw std::domain_error("rank: n must be in [1, 2^63)");
  }
  if (n == 1) return 1;  // F_1 = 1
  const Factorization fac = factorize(n, spf_, cfg_);
  u64 z = 1;
  for (const PrimePower& pp : fac.factors) {
    z = lcm_checked(z, rank_prime_power(pp.prime, pp.exponent));
  }
  return z;
}

u64 RankEvaluator::ell(u64 n) { return lcm_checked(n, rank(n)); }

RankInfo RankEvaluator::rank_info(u64 n) {
  const u64 z = rank(n);
  return RankInfo{n, z, lcm_checked(n, z)};
}

}  // namespace fibgcd
