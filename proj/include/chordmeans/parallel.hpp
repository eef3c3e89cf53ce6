#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace chordmeans::detail {

/// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
/// Each index is processed exactly once and writes only its own output, so
/// results do not depend on the thread count.
template <class F>
void parallel_for(int count, F&& body, int min_per_thread = 1) {
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int threads = std::clamp(count / std::max(min_per_thread, 1), 1, hw);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace chordmeans::detail
