#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sharkswim {

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

// Runs body(r) for r in [0, count) across `workers` threads. Each replicate
// must derive its randomness from its own index (one RNG stream per r), so
// the outcome is identical for every worker count; results should be written
// to preallocated slot r. Exceptions propagate from the first failing index.
inline void parallel_replicates(int64_t count, int workers,
                                const std::function<void(int64_t)>& body) {
    workers = resolve_workers(workers);
    if (workers <= 1 || count <= 1) {
        for (int64_t r = 0; r < count; ++r) body(r);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors;
    errors.resize(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                // Contiguous blocks keep per-thread buffers cache-friendly.
                int64_t lo = count * w / workers;
                int64_t hi = count * (w + 1) / workers;
                for (int64_t r = lo; r < hi; ++r) body(r);
            } catch (...) {
                errors[std::size_t(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace sharkswim
