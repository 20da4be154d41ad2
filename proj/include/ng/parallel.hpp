#ifndef NG_PARALLEL_HPP
#define NG_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace ng {

// Static partition of [0, n) across hardware threads.  Results must be
// written to per-index slots so the outcome is independent of interleaving.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&fn, w, workers, n] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace ng

#endif  // NG_PARALLEL_HPP
