#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace drinfeld::detail {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results are written by
// index, so callers get the same output for any job count. The first
// exception thrown by a worker is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        });
    }
    workers.clear();
    if (error)
        std::rethrow_exception(error);
}

} // namespace drinfeld::detail
