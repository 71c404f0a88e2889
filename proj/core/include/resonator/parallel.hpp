#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace resonator {

// thread count: hardware concurrency capped by RESONATOR_THREADS
inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("RESONATOR_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && unsigned(cap) < hw) hw = unsigned(cap);
  }
  return int(hw);
}

// deterministic parallel map: fn(i) for i in [0, n), results delivered in
// index order regardless of scheduling
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace resonator
