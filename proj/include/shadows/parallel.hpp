// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_PARALLEL_HPP_
#define SHADOWS_PARALLEL_HPP_

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace shadows {

/// Fixed reduction block size. Accumulating Monte-Carlo work per block and
/// combining blocks in index order keeps floating-point results independent
/// of the thread count.
inline constexpr std::uint64_t kReductionBlock = 4096;

/// Invokes fn(shot) once for every shot in [0, shots). Shots are handed out
/// in contiguous blocks; fn must only write to slots owned by its shot.
inline void parallel_shots(std::uint64_t shots, int threads, const std::function<void(std::uint64_t)>& fn) {
  if (threads <= 1 || shots < 2) {
    for (std::uint64_t s = 0; s < shots; ++s) fn(s);
    return;
  }
  const std::uint64_t nblocks = (shots + kReductionBlock - 1) / kReductionBlock;
  std::vector<std::thread> pool;
  std::uint64_t blocks_per_thread = (nblocks + threads - 1) / static_cast<std::uint64_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t b0 = static_cast<std::uint64_t>(t) * blocks_per_thread;
    const std::uint64_t b1 = std::min(nblocks, b0 + blocks_per_thread);
    if (b0 >= b1) break;
    pool.emplace_back([b0, b1, shots, &fn] {
      for (std::uint64_t b = b0; b < b1; ++b) {
        const std::uint64_t end = std::min(shots, (b + 1) * kReductionBlock);
        for (std::uint64_t s = b * kReductionBlock; s < end; ++s) fn(s);
      }
    });
  }
  for (auto& th : pool) th.join();
}

/// Block-deterministic map-reduce: fn(block, begin, end) fills the block's
/// private accumulator; the caller then folds the accumulators in block
/// order. Block boundaries never depend on the thread count.
inline void parallel_blocks(std::uint64_t shots, int threads,
                            const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
  const std::uint64_t nblocks = (shots + kReductionBlock - 1) / kReductionBlock;
  if (threads <= 1 || nblocks < 2) {
    for (std::uint64_t b = 0; b < nblocks; ++b)
      fn(b, b * kReductionBlock, std::min(shots, (b + 1) * kReductionBlock));
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t per = (nblocks + threads - 1) / static_cast<std::uint64_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t b0 = static_cast<std::uint64_t>(t) * per;
    const std::uint64_t b1 = std::min(nblocks, b0 + per);
    if (b0 >= b1) break;
    pool.emplace_back([b0, b1, shots, &fn] {
      for (std::uint64_t b = b0; b < b1; ++b)
        fn(b, b * kReductionBlock, std::min(shots, (b + 1) * kReductionBlock));
    });
  }
  for (auto& th : pool) th.join();
}

inline std::uint64_t block_count(std::uint64_t shots) {
  return (shots + kReductionBlock - 1) / kReductionBlock;
}

}  // namespace shadows

#endif  // SHADOWS_PARALLEL_HPP_
