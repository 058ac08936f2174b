#pragma once

#include <span>

#include "fibgcd/fib_rank.hpp"
#include "fibgcd/rational.hpp"

namespace fibgcd {

// One (m, x) survey: empirical share of primes p <= x with m | z(p) against
// the exact limit density. The share is normalized by the actual prime count
// pi(x) rather than x/log x — same limit, far less noise at desk scale
// (x/log x undershoots pi(x) by ~8% at x = 10^5).
struct DensityReport {
  u64 m = 1;  // the divisor m, or y for the P1 survey
  u64 x = 2;
  u64 prime_count = 0;
  u64 hit_count = 0;
  double empirical = 0.0;
  Rational exact;
  double abs_error = 0.0;
};

// Exact density of primes with m | z(p):
//   zeta(q^e) = q^(2-e) / (q^2 - 1),
//   zeta(m) = prod over q^e || m, times 1 / (5/4) / (1/2) according to
//   10 ∤ m / m = 10 mod 20 / 20 | m.  zeta(1) = 1.
Rational zeta_exact(u64 m, const FactorConfig& cfg = {});

// Same evaluator from an explicit factorization (primes strictly increasing);
// lets callers with known factors avoid u64 overflow of the product.
Rational zeta_from_factors(std::span<const PrimePower> factors);

// Default cap on the number of odd primes in the inclusion-exclusion sum
// (the sum has 2^k terms).
inline constexpr u32 kInclusionExclusionCap = 20;

// prod over odd primes q in [3, y] of (1 - q/(q^2 - 1)). Requires y >= 3.
Rational p1_limit_product(u64 y);

// sum over squarefree divisors m of P_y = prod of odd primes in [3, y] of
// mobius(m) * zeta(m). Equals p1_limit_product(y) exactly because zeta is
// multiplicative on odd arguments.
Rational p1_limit_inclusion_exclusion(u64 y, u32 max_primes = kInclusionExclusionCap);

// Survey of #{p <= x : m | z(p)} against zeta_exact(m).
DensityReport prime_rank_density(u64 m, u64 x, RankEvaluator& ranks,
                                 int jobs = 1);

// Survey of P1 = {p : q ∤ z(p) for every odd prime q <= y} against
// p1_limit_product(y). The report's m field carries y.
DensityReport p1_empirical(u64 y, u64 x, RankEvaluator& ranks, int jobs = 1);

}  // namespace fibgcd
