#ifndef SSDBCODI_PARALLEL_HPP
#define SSDBCODI_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ssdbcodi {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each call must
// write only to its own output slot; results are then independent of
// scheduling. The first exception thrown by any job is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace ssdbcodi

#endif  // SSDBCODI_PARALLEL_HPP
