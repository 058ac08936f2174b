#include "fibgcd/density.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "fibgcd/parallel.hpp"

namespace fibgcd {

namespace {

BigInt bigint_pow(u64 base, u32 exp) {
  BigInt r = 1;
  for (u32 i = 0; i < exp; ++i) r *= base;
  return r;
}

// zeta(q^e) = q^(2-e) / (q^2 - 1), read as q^max(2-e,0) / (q^max(e-2,0) (q^2-1)).
Rational zeta_prime_power(u64 q, u32 e) {
  const BigInt q2m1 = BigInt(q) * q - 1;
  const BigInt num = e < 2 ? bigint_pow(q, 2 - e) : BigInt(1);
  const BigInt den = e > 2 ? bigint_pow(q, e - 2) * q2m1 : q2m1;
  return Rational(num, den);
}

std::vector<u64> odd_primes_up_to(u64 y) {
  if (y < 3) throw std::domain_error("P1 bound y must be >= 3");
  std::vector<u64> primes = primes_up_to(y);
  primes.erase(primes.begin());  // drop 2
  return primes;
}

DensityReport make_report(u64 m, u64 x, u64 prime_count, u64 hit_count,
                          Rational exact) {
  DensityReport report;
  report.m = m;
  report.x = x;
  report.prime_count = prime_count;
  report.hit_count = hit_count;
  report.empirical =
      static_cast<double>(hit_count) / static_cast<double>(prime_count);
  report.abs_error = std::abs(report.empirical - exact.to_double());
  report.exact = std::move(exact);
  return report;
}

// Shared survey loop: counts primes p <= x passing `hit`, merging per-block
// counters so the tally is identical for any worker count.
template <typename Hit>
u64 count_prime_hits(const std::vector<u64>& primes, int jobs, Hit&& hit) {
  if (primes.empty()) return 0;
  const u64 block_size = 1024;
  std::vector<u64> counts(block_count(0, primes.size() - 1, block_size), 0);
  parallel_blocks(0, primes.size() - 1, block_size, jobs,
                  [&](u64 first, u64 last, std::size_t idx) {
                    u64 c = 0;
                    for (u64 i = first; i <= last; ++i) {
                      if (hit(primes[i])) ++c;
                    }
                    counts[idx] = c;
                  });
  u64 total = 0;
  for (u64 c : counts) total += c;
  return total;
}

}  // namespace

Rational zeta_from_factors(std::span<const PrimePower> factors) {
  Rational zeta(BigInt(1), BigInt(1));
  u32 v2 = 0;
  u32 v5 = 0;
  for (const PrimePower& pp : factors) {
    zeta *= zeta_prime_power(pp.prime, pp.exponent);
    if (pp.prime == 2) v2 = pp.exponent;
    if (pp.prime == 5) v5 = pp.exponent;
  }
  if (v2 >= 1 && v5 >= 1) {
    // 10 | m: correction 5/4 when m = 10 (mod 20), 1/2 when 20 | m.
    zeta *= v2 == 1 ? Rational(BigInt(5), BigInt(4))
                    : Rational(BigInt(1), BigInt(2));
  }
  return zeta;
}

Rational zeta_exact(u64 m, const FactorConfig& cfg) {
  const Factorization fac = factorize(m, nullptr, cfg);
  return zeta_from_factors(fac.factors);
}

Rational p1_limit_product(u64 y) {
  Rational product(BigInt(1), BigInt(1));
  for (u64 q : odd_primes_up_to(y)) {
    const BigInt q2m1 = BigInt(q) * q - 1;
    product *= Rational(q2m1 - q, q2m1);  // 1 - q/(q^2 - 1)
  }
  return product;
}

Rational p1_limit_inclusion_exclusion(u64 y, u32 max_primes) {
  const std::vector<u64> primes = odd_primes_up_to(y);
  if (primes.size() > max_primes) {
    throw std::invalid_argument(
        "p1_limit_inclusion_exclusion: more than " +
        std::to_string(max_primes) + " odd primes <= y (the sum has 2^k terms)");
  }
  const u32 k = static_cast<u32>(primes.size());
  Rational sum;
  std::vector<PrimePower> divisor;
  for (u64 mask = 0; mask < (u64{1} << k); ++mask) {
    divisor.clear();
    for (u32 i = 0; i < k; ++i) {
      if ((mask >> i) & 1) divisor.push_back(PrimePower{primes[i], 1});
    }
    const Rational term = zeta_from_factors(divisor);
    // mobius of a squarefree product of j primes is (-1)^j
    if (std::popcount(mask) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

DensityReport prime_rank_density(u64 m, u64 x, RankEvaluator& ranks, int jobs) {
  if (m == 0 || m > kNaturalMax) {
    throw std::domain_error("prime_rank_density: m must be in [1, 2^63)");
  }
  if (x < 2) throw std::domain_error("prime_rank_density: x must be >= 2");
  const std::vector<u64> primes = primes_up_to(x);
  const u64 hits = count_prime_hits(
      primes, jobs, [&](u64 p) { return ranks.rank_prime(p) % m == 0; });
  return make_report(m, x, primes.size(), hits,
                     zeta_exact(m, ranks.factor_config()));
}

DensityReport p1_empirical(u64 y, u64 x, RankEvaluator& ranks, int jobs) {
  if (x < 2) throw std::domain_error("p1_empirical: x must be >= 2");
  const std::vector<u64> qs = odd_primes_up_to(y);
  const std::vector<u64> primes = primes_up_to(x);
  const u64 hits = count_prime_hits(primes, jobs, [&](u64 p) {
    const u64 zp = ranks.rank_prime(p);
    for (u64 q : qs) {
      if (zp % q == 0) return false;
    }
    return true;
  });
  return make_report(y, x, primes.size(), hits, p1_limit_product(y));
}

}  // namespace fibgcd
