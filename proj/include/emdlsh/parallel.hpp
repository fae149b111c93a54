#pragma once

#include <cstddef>
#include <functional>

namespace emdlsh {

// Worker count: EMD_LSH_THREADS if set to a positive integer, else the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Runs body(i) for i in [0, n) over up to thread_count() workers. Work is
// handed out by index, so results written to per-index slots do not depend
// on the worker count. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace emdlsh
