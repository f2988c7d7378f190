#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace orbnet {

// Worker count from ORBNET_JOBS, else the hardware concurrency (at least 1).
unsigned default_jobs();

// Calls fn(i) for every i in [0, count) on up to `jobs` threads. Indices are
// handed out dynamically; callers write results into per-index slots so the
// outcome never depends on scheduling. The first exception is rethrown after
// all workers have stopped.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::vector<std::thread> pool;
    pool.reserve(n_threads - 1);
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace orbnet
