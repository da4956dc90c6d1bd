#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace subdicke {

/// Runs fn(i) for i in [0, n) on up to `jobs` worker threads. Work items are
/// claimed by atomic index; callers store results by index so output order is
/// independent of scheduling. The first exception thrown by a worker is
/// rethrown on the calling thread after all workers join.
inline void parallel_for_indexed(std::size_t n, unsigned jobs,
                                 const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const unsigned workers =
        std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace subdicke
