#pragma once

#include <cstddef>
#include <functional>

namespace dcopt {

/// Worker count: DCOPT_THREADS when set and positive, else hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n) across up to thread_count() threads. Results
/// must be written to per-index slots. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dcopt
