// Chunked parallel-for over an index range. Thread count defaults to the
// hardware concurrency and is capped by PMLFORGE_THREADS when set; the
// body must be safe to call concurrently on distinct indices. Internal
// header.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pmlforge::detail {

inline int thread_budget() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("PMLFORGE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::min(n, 256);
}

inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int threads = std::min(thread_budget(), std::max(count, 1));
    if (threads <= 1 || count < 2) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int lo = t * chunk;
        const int hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace pmlforge::detail
