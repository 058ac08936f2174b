#pragma once

#include <functional>
#include <vector>

#include "fibgcd/fib_rank.hpp"
#include "fibgcd/parallel.hpp"

namespace fibgcd {

// Full evidence trail for one membership decision: n is in the image of g
// exactly when g(ell(n)) = n. n | g_of_ell holds unconditionally.
struct MembershipRecord {
  u64 n = 1;
  u64 z = 1;
  u64 ell = 1;
  u64 g_of_ell = 1;
  bool in_a = true;
};

struct GcdSequenceRow {
  u64 n = 1;
  u64 g = 1;
  friend bool operator==(const GcdSequenceRow&, const GcdSequenceRow&) = default;
};

// g(n) = gcd(n, F_n), computed from F_n mod n (never the exact Fibonacci
// number); gcd(n, 0) = n.
u64 g_of(u64 n);

// Decides n ∈ A by the criterion n = g(ell(n)), carrying all intermediates.
MembershipRecord is_member(u64 n, RankEvaluator& ranks);

// Sufficient (not necessary) membership test for a prime p: true iff p != 3
// and no prime q has ell(q) | z(p). Since q | ell(q), any such q divides
// z(p), so only the prime divisors of z(p) need checking.
bool prime_sufficient_condition(u64 p, RankEvaluator& ranks);

// { n <= x : n in A }, ascending. Output is identical for every jobs value.
// An OverflowError from some is_member(n) is reported with that n attached.
std::vector<u64> enumerate_members(u64 x, RankEvaluator& ranks, int jobs = 1,
                                   u64 block_size = kDefaultBlockSize);

// { n <= x : n | F_n }, ascending — the fixed points of g (z(n) | n),
// a subset of enumerate_members(x).
std::vector<u64> enumerate_fixed_points(u64 x, int jobs = 1,
                                        u64 block_size = kDefaultBlockSize);

// Rows (n, g(n)) for n = 1..x, delivered in order.
void gcd_sequence(u64 x, const std::function<void(const GcdSequenceRow&)>& sink,
                  int jobs = 1, u64 block_size = kDefaultBlockSize);

std::vector<GcdSequenceRow> gcd_sequence_rows(u64 x, int jobs = 1,
                                              u64 block_size = kDefaultBlockSize);

// #{ n <= x : gcd(n, F_n) = 1 }.
u64 count_coprime(u64 x, int jobs = 1, u64 block_size = kDefaultBlockSize);

}  // namespace fibgcd
