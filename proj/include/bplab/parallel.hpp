#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bplab {

inline std::size_t default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/**
 * Runs body(state, i) for i in [0, count) on up to `workers` threads, each with
 * its own state from make_state(). Indices are interleaved across workers;
 * callers write results by index, so output never depends on the worker count.
 * The first exception thrown by any worker is rethrown after all have joined.
 */
template <typename MakeState, typename Body>
void parallel_for(std::size_t count, std::size_t workers, MakeState&& make_state, Body&& body) {
    if (count == 0) return;
    workers = std::clamp<std::size_t>(workers, 1, count);
    if (workers == 1) {
        auto state = make_state();
        for (std::size_t i = 0; i < count; ++i) body(state, i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    auto state = make_state();
                    for (std::size_t i = w; i < count; i += workers) body(state, i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace bplab
