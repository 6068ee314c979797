#pragma once

#include <cstddef>
#include <functional>

namespace roughflux {

// Worker count for data-parallel maps: the ROUGHFLUX_THREADS environment
// variable if set (>= 1), otherwise the hardware concurrency.
int thread_count();

// Static block partition of [0, n) over thread_count() workers. `body` must
// be safe to call concurrently for distinct indices; results should be
// written to per-index slots so reductions stay order-independent. The first
// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace roughflux
