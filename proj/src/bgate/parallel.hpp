#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bgate {

// Worker count: hardware concurrency, optionally capped by the
// BOLTZMANN_GATE_THREADS environment variable. 1 disables threading.
inline unsigned thread_budget() {
  static const unsigned budget = [] {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("BOLTZMANN_GATE_THREADS")) {
      long cap = std::strtol(env, nullptr, 10);
      if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
  }();
  return budget;
}

// Runs fn(i) for i in [0, count). Results must be written to per-index slots;
// the merge order is then independent of scheduling. Nested calls run serially.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  static thread_local bool inside = false;
  unsigned workers = thread_budget();
  if (inside || workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = static_cast<unsigned>(count);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    inside = true;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
    inside = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

}  // namespace bgate
