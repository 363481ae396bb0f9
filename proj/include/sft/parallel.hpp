#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace sft {

/// Bulk-synchronous parallel loop: [lo, hi) is split into `workers` contiguous
/// chunks, each run on its own thread, joined before returning. Chunking is a
/// pure function of (lo, hi, workers), so results never depend on scheduling
/// as long as chunks write disjoint outputs.
template <typename Fn>
void bulk_parallel_for(std::int64_t lo, std::int64_t hi, int workers, Fn&& body) {
  const std::int64_t count = hi - lo;
  if (count <= 0) return;
  if (workers <= 1 || count == 1) {
    body(lo, hi);
    return;
  }
  const int used = static_cast<int>(std::min<std::int64_t>(workers, count));
  std::vector<std::thread> pool;
  pool.reserve(used);
  const std::int64_t chunk = (count + used - 1) / used;
  for (int w = 0; w < used; ++w) {
    const std::int64_t a = lo + w * chunk;
    const std::int64_t b = std::min(hi, a + chunk);
    if (a >= b) break;
    pool.emplace_back([&body, a, b] { body(a, b); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sft
