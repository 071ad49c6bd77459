#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace chainrec {

/// Number of workers to use for `degree` (0 means hardware concurrency).
inline int resolve_parallelism(int degree) {
    if (degree > 0) return degree;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n). Work is claimed in chunks from an atomic
/// counter; every output must be written to a slot indexed by i so that
/// results do not depend on the schedule or on the worker count.
template <typename Fn>
void parallel_for(std::size_t n, int degree, Fn&& fn, std::size_t chunk = 16) {
    const int workers = resolve_parallelism(degree);
    if (workers <= 1 || n <= chunk) {
        for (std::size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&](int tid) {
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= n) break;
            const std::size_t end = begin + chunk < n ? begin + chunk : n;
            for (std::size_t i = begin; i < end; ++i) fn(i, tid);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int t = 1; t < workers; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
}

} // namespace chainrec
