#pragma once

#include <cstdint>
#include <functional>

namespace floodfuse {

/// Worker count: min(hardware_concurrency, FLOODFUSE_THREADS) with a floor
/// of 1. FLOODFUSE_THREADS is read once per process.
int worker_count();

/// Runs fn(begin, end) over a disjoint partition of [0, count) on up to
/// worker_count() threads. Partitioning is contiguous and writers touch only
/// their own range, so results cannot depend on the thread count.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace floodfuse
