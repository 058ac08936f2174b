#include "fibgcd/gcd_set.hpp"

#include <cassert>
#include <string>

namespace fibgcd {

namespace {

void require_natural(u64 n, const char* what) {
  if (n == 0 || n > kNaturalMax) {
    throw std::domain_error(std::string(what) + " must be in [1, 2^63)");
  }
}

}  // namespace

u64 g_of(u64 n) {
  require_natural(n, "g_of: n");
  return gcd(n, fib_pair_mod(n, n).f_k);
}

MembershipRecord is_member(u64 n, RankEvaluator& ranks) {
  require_natural(n, "is_member: n");
  const RankInfo info = ranks.rank_info(n);
  const u64 g_ell = g_of(info.ell);
  assert(g_ell % n == 0);  // n | ell(n) and n | F_ell(n)
  return MembershipRecord{n, info.z, info.ell, g_ell, g_ell == n};
}

bool prime_sufficient_condition(u64 p, RankEvaluator& ranks) {
  if (!is_prime(p)) {
    throw std::domain_error("prime_sufficient_condition: " +
                            std::to_string(p) + " is not prime");
  }
  if (p == 3) return false;
  const u64 zp = ranks.rank_prime(p);
  // ell(q) | z(p) forces q | z(p), so candidates are the prime divisors of
  // z(p). For q != 5 we have gcd(q, z(q)) = 1, hence ell(q) = q * z(q)
  // divides z(p) iff both q and z(q) do; q | z(p) holds by construction.
  const Factorization fac =
      factorize(zp, ranks.spf_table(), ranks.factor_config());
  for (const PrimePower& pp : fac.factors) {
    if (pp.prime == 5) return false;  // ell(5) = 5 divides z(p)
    if (zp % ranks.rank_prime(pp.prime) == 0) return false;
  }
  return true;
}

std::vector<u64> enumerate_members(u64 x, RankEvaluator& ranks, int jobs,
                                   u64 block_size) {
  require_natural(x, "enumerate_members: x");
  if (block_size == 0) block_size = kDefaultBlockSize;
  std::vector<std::vector<u64>> found(block_count(1, x, block_size));
  parallel_blocks(1, x, block_size, jobs,
                  [&](u64 first, u64 last, std::size_t idx) {
                    auto& out = found[idx];
                    for (u64 n = first; n <= last; ++n) {
                      try {
                        if (is_member(n, ranks).in_a) out.push_back(n);
                      } catch (const OverflowError& e) {
                        throw OverflowError("is_member(" + std::to_string(n) +
                                            "): " + e.what());
                      }
                    }
                  });
  std::vector<u64> members;
  for (const auto& blk : found) {
    members.insert(members.end(), blk.begin(), blk.end());
  }
  return members;
}

std::vector<u64> enumerate_fixed_points(u64 x, int jobs, u64 block_size) {
  require_natural(x, "enumerate_fixed_points: x");
  if (block_size == 0) block_size = kDefaultBlockSize;
  std::vector<std::vector<u64>> found(block_count(1, x, block_size));
  parallel_blocks(1, x, block_size, jobs,
                  [&](u64 first, u64 last, std::size_t idx) {
                    auto& out = found[idx];
                    for (u64 n = first; n <= last; ++n) {
                      if (fib_pair_mod(n, n).f_k == 0) out.push_back(n);
                    }
                  });
  std::vector<u64> fixed;
  for (const auto& blk : found) {
    fixed.insert(fixed.end(), blk.begin(), blk.end());
  }
  return fixed;
}

void gcd_sequence(u64 x, const std::function<void(const GcdSequenceRow&)>& sink,
                  int jobs, u64 block_size) {
  require_natural(x, "gcd_sequence: x");
  if (block_size == 0) block_size = kDefaultBlockSize;
  std::vector<std::vector<GcdSequenceRow>> rows(block_count(1, x, block_size));
  parallel_blocks(1, x, block_size, jobs,
                  [&](u64 first, u64 last, std::size_t idx) {
                    auto& out = rows[idx];
                    out.reserve(static_cast<std::size_t>(last - first + 1));
                    for (u64 n = first; n <= last; ++n) {
                      out.push_back(GcdSequenceRow{n, g_of(n)});
                    }
                  });
  for (const auto& blk : rows) {
    for (const GcdSequenceRow& row : blk) sink(row);
  }
}

std::vector<GcdSequenceRow> gcd_sequence_rows(u64 x, int jobs, u64 block_size) {
  std::vector<GcdSequenceRow> rows;
  rows.reserve(static_cast<std::size_t>(x));
  gcd_sequence(x, [&](const GcdSequenceRow& row) { rows.push_back(row); }, jobs,
               block_size);
  return rows;
}

u64 count_coprime(u64 x, int jobs, u64 block_size) {
  require_natural(x, "count_coprime: x");
  if (block_size == 0) block_size = kDefaultBlockSize;
  std::vector<u64> counts(block_count(1, x, block_size), 0);
  parallel_blocks(1, x, block_size, jobs,
                  [&](u64 first, u64 last, std::size_t idx) {
                    u64 c = 0;
                    for (u64 n = first; n <= last; ++n) {
                      if (g_of(n) == 1) ++c;
                    }
                    counts[idx] = c;
                  });
  u64 total = 0;
  for (u64 c : counts) total += c;
  return total;
}

}  // namespace fibgcd
