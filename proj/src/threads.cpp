#include "snowcount/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace snowcount {

size_t worker_count() {
    size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SNOWCOUNT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min(n, (size_t)v);
    }
    return n;
}

void parallel_for(size_t n, const std::function<void(size_t, size_t)>& fn) {
    size_t workers = std::min(worker_count(), n);
    if (workers <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        size_t b = w * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e);
    }
    for (auto& t : pool) t.join();
}

}  // namespace snowcount
