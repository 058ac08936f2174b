#include <benchmark/benchmark.h>

#include "fibgcd/density.hpp"
#include "fibgcd/gcd_set.hpp"

namespace {

using namespace fibgcd;

void BM_fib_pair_mod(benchmark::State& state) {
  const u64 k = u64{1} << static_cast<u32>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fib_pair_mod(k, 1000000007).f_k);
  }
}
BENCHMARK(BM_fib_pair_mod)->Arg(20)->Arg(40)->Arg(62);

void BM_sieve_spf(benchmark::State& state) {
  const u64 limit = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    const SpfTable table = sieve_spf(limit);
    benchmark::DoNotOptimize(table.spf(limit - 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(limit));
}
BENCHMARK(BM_sieve_spf)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24);

void BM_factorize_rho(benchmark::State& state) {
  // worst-ish case: balanced semiprime, no table
  const u64 n = 10000019ull * 10000079ull;
  for (auto _ : state) {
    benchmark::DoNotOptimize(factorize(n).factors.size());
  }
}
BENCHMARK(BM_factorize_rho);

void BM_rank_prime_cold(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  const SpfTable table = sieve_spf(x + 2);
  const std::vector<u64> primes = primes_up_to(x);
  for (auto _ : state) {
    RankEvaluator ranks(&table);  // cold cache each round
    u64 acc = 0;
    for (u64 p : primes) acc ^= ranks.rank_prime(p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(primes.size()));
}
BENCHMARK(BM_rank_prime_cold)->Arg(10000)->Arg(100000);

void BM_is_member(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  const SpfTable table = sieve_spf(x + 2);
  RankEvaluator ranks(&table);
  for (auto _ : state) {
    u64 count = 0;
    for (u64 n = 1; n <= x; ++n) {
      if (is_member(n, ranks).in_a) ++count;
    }
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(x));
}
BENCHMARK(BM_is_member)->Arg(10000)->Arg(100000);

void BM_enumerate_members_jobs(benchmark::State& state) {
  const u64 x = 100000;
  const SpfTable table = sieve_spf(x + 2);
  RankEvaluator ranks(&table);
  (void)enumerate_members(x, ranks, 2);  // warm the z(p) cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        enumerate_members(x, ranks, static_cast<int>(state.range(0))).size());
  }
}
BENCHMARK(BM_enumerate_members_jobs)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_zeta_exact(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta_exact(27720).num());  // 2^3*3^2*5*7*11
  }
}
BENCHMARK(BM_zeta_exact);

void BM_p1_inclusion_exclusion(benchmark::State& state) {
  const u64 y = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(p1_limit_inclusion_exclusion(y).num());
  }
}
BENCHMARK(BM_p1_inclusion_exclusion)->Arg(20)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
