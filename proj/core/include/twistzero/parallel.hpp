#pragma once

#include <cstddef>
#include <functional>

namespace twistzero {

/// Worker count: TWISTZERO_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index is
/// handled exactly once, so writing results into slot i keeps the output
/// independent of scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace twistzero
