#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace fpl {

// Static block partition of [0, count) across workers. Callers must make
// every element's value independent of the partition so results are
// bit-identical for any worker count.
inline void run_partitioned(long long count, int workers,
                            const std::function<void(long long, long long)>& block) {
  if (workers <= 1 || count <= 1) {
    block(0, count);
    return;
  }
  long long parts = std::min<long long>(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(parts));
  for (long long w = 0; w < parts; ++w) {
    long long lo = count * w / parts;
    long long hi = count * (w + 1) / parts;
    pool.emplace_back(block, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace fpl
