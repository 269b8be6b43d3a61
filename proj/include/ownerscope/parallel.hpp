#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ownerscope {

// Runs fn(i) for i in [0, count) across up to `jobs` threads. Callers write
// results into index-addressed slots, so output bytes do not depend on the
// job count.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& thread : threads) thread.join();
}

}  // namespace ownerscope
