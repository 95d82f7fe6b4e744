#pragma once

#include <cstddef>
#include <thread>
#include <vector>

// Deterministic work splitting: [0, count) is cut into contiguous chunks,
// one per thread, and each index is visited exactly once by exactly one
// thread. Results must be written to disjoint slots keyed by index; with
// that discipline the output is bit-identical for any thread count.

namespace logdmo {

/// threads == 0 picks the hardware count (at least 1).
[[nodiscard]] inline unsigned resolve_threads(unsigned threads) noexcept {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

template <typename Fn>
inline void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (threads > count) threads = unsigned(count);
    const std::size_t chunk = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = std::size_t(t) * chunk;
        if (lo >= count) break;
        const std::size_t hi = lo + chunk < count ? lo + chunk : count;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace logdmo
