#pragma once

#include <cstddef>
#include <functional>

namespace snowcount {

// Worker cap: min(hardware_concurrency, SNOWCOUNT_THREADS if set).
size_t worker_count();

// Static parallel for over [0, n) split into contiguous blocks.
void parallel_for(size_t n, const std::function<void(size_t begin, size_t end)>& fn);

}  // namespace snowcount
