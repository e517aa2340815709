#pragma once

#include <cstddef>
#include <functional>

namespace rmtlab {

// Worker count: RMTLAB_THREADS if set, else hardware concurrency.
int default_threads();

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// processed exactly once; results must be written to per-index slots so the
// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace rmtlab
