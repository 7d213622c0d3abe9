#pragma once

#include <cstddef>
#include <functional>

namespace obsbench {

/// Worker count: `requested` (0 = hardware concurrency), capped by the
/// OBSBENCH_THREADS environment variable when set.
int thread_count(int requested = 0);

/// Runs fn(0..n-1) on a bounded pool. Work items must be independent; callers
/// write results into per-index slots so the outcome is identical for any
/// thread count. The first exception thrown by an item is rethrown after all
/// workers join.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn);

}  // namespace obsbench
