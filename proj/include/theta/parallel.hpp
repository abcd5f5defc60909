#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace theta {

/// Worker count: THETA_SPANNER_THREADS if set and positive, otherwise the
/// hardware concurrency (0 in the variable also means auto).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Bodies must
/// write only to disjoint state. The first exception thrown by any body is
/// rethrown on the calling thread after all workers join.
template <typename Body>
void parallel_for(std::size_t n, Body&& body)
{
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next = n;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace theta
