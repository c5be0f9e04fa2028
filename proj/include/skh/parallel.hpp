#pragma once

#include <cstddef>
#include <functional>

namespace skh {

/// Worker count: SKH_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(0..count-1) across worker_count() threads. Iterations must be
/// independent. The first exception thrown by any iteration is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace skh
