#pragma once

#include <cstddef>
#include <functional>

namespace hbeam {

// Worker count from HBEAM_WORKERS, falling back to the hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n) on up to `workers` threads (0 = worker_count()).
// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers = 0);

}  // namespace hbeam
