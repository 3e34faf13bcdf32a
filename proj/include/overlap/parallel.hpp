#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace overlap {

/// Splits [0, count) into `threads` contiguous blocks, evaluates `block(begin, end)`
/// on each and folds the partial results left to right with `combine`.
///
/// The result is independent of `threads` whenever `combine` is associative and
/// the per-block results compose, which is the case for every min/max reduction
/// with a total-order tie-break used in this library.
template <class Result, class Block, class Combine>
Result parallel_reduce(std::uint64_t count, int threads, Result init, Block block, Combine combine) {
  if (threads <= 1 || count < 2) {
    return combine(std::move(init), block(std::uint64_t{0}, count));
  }
  const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(threads, count));
  std::vector<Result> partial(workers, init);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] { partial[w] = block(begin, end); });
  }
  for (auto& t : pool) t.join();
  Result acc = std::move(init);
  for (auto& p : partial) acc = combine(std::move(acc), std::move(p));
  return acc;
}

}  // namespace overlap
