#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fibgcd/arith.hpp"

namespace fibgcd {

// Contiguous work unit handed to one worker; balances SPF-table cache
// locality against scheduling overhead.
inline constexpr u64 kDefaultBlockSize = 4096;

inline std::size_t block_count(u64 lo, u64 hi, u64 block_size) {
  if (hi < lo) return 0;
  return static_cast<std::size_t>((hi - lo) / block_size + 1);
}

// Splits the inclusive range [lo, hi] into fixed-size blocks and runs
// fn(first, last, block_index) (both ends inclusive) across `jobs` threads.
// Blocks are claimed from an atomic counter. Every block runs even if some
// throw; afterwards the exception from the lowest-index failing block is
// rethrown, so error reporting does not depend on the schedule.
template <typename Fn>
void parallel_blocks(u64 lo, u64 hi, u64 block_size, int jobs, Fn&& fn) {
  if (hi < lo) return;
  if (block_size == 0) block_size = kDefaultBlockSize;
  if (jobs < 1) throw std::domain_error("parallel_blocks: jobs must be >= 1");
  const std::size_t num_blocks = block_count(lo, hi, block_size);

  auto run_block = [&](std::size_t idx) {
    const u64 first = lo + idx * block_size;
    const u64 last = std::min(hi, first + (block_size - 1));
    fn(first, last, idx);
  };

  if (jobs == 1 || num_blocks == 1) {
    for (std::size_t i = 0; i < num_blocks; ++i) run_block(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_block = num_blocks;
  std::exception_ptr err;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
      if (idx >= num_blocks) return;
      try {
        run_block(idx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (idx < err_block) {
          err_block = idx;
          err = std::current_exception();
        }
      }
    }
  };

  const std::size_t nthreads =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), num_blocks);
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (err) std::rethrow_exception(err);
}

}  // namespace fibgcd
