#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace grin {

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(task) for task in [0, n_tasks) on up to `workers` threads.
/// Tasks are claimed dynamically, so callers must write results into
/// per-task slots for the output to be independent of scheduling.
template <class Fn>
void parallel_for(std::size_t n_tasks, unsigned workers, Fn&& fn) {
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), n_tasks));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
        try {
            for (std::size_t i = next++; i < n_tasks; i = next++) fn(i);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_tasks;
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(n_threads - 1);
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(body);
    body();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace grin
