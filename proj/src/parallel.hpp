#pragma once

#include <cstddef>
#include <functional>

namespace avd::detail {

/// Worker count: hardware concurrency, capped by the AVD_THREADS variable.
unsigned worker_count();

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. Rethrows the first exception from any chunk.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace avd::detail
