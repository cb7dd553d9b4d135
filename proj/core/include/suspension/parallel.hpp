#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace suspension {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(t) for t in [0, trials). Work is trial-indexed, so results that
/// are written by index are identical for any worker count; reductions are
/// the caller's job and must be done in index order.
template <typename Fn>
void run_trials(std::uint64_t trials, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || trials < 2 * threads) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        std::uint64_t begin = trials * w / threads;
        std::uint64_t end = trials * (w + 1) / threads;
        workers.emplace_back([begin, end, &fn] {
            for (std::uint64_t t = begin; t < end; ++t) fn(t);
        });
    }
    for (auto& th : workers) th.join();
}

}  // namespace suspension
