#include "kreinshift/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace kreinshift {

int thread_cap() {
  if (const char* env = std::getenv("KREINSHIFT_THREADS")) {
    try {
      int v = std::stoi(env);
      return std::max(1, v);
    } catch (...) {
      return 1;
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;

  const std::size_t chunks = std::min(kChunkCount, n);
  const std::size_t base = n / chunks;
  const std::size_t rem = n % chunks;

  auto bounds = [&](std::size_t c) {
    std::size_t begin = c * base + std::min(c, rem);
    std::size_t end = begin + base + (c < rem ? 1 : 0);
    return std::pair<std::size_t, std::size_t>{begin, end};
  };

  const int workers = std::min<std::size_t>(thread_cap(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = bounds(c);
      fn(b, e, c);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= chunks) break;
      auto [b, e] = bounds(c);
      fn(b, e, c);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

} // namespace kreinshift
