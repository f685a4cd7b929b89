#pragma once

#include <cstddef>
#include <functional>

namespace logdiv {

// Worker count used by parallel_for: LOGDIV_THREADS if set and positive,
// otherwise hardware_concurrency, clamped to [1, 64].
std::size_t worker_count();

// Runs fn(i) for i in [0, n).  Work is split into contiguous blocks, one
// per worker, so reductions done per-block stay in index order and results
// are independent of the worker count.  fn must not throw across blocks;
// the first exception is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace logdiv
