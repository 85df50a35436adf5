#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gemcensus {

// Runs f(i) for every i in [0, count) across `threads` workers, claiming
// indices from a shared counter. The first exception thrown by any worker is
// rethrown on the calling thread after all workers finish.
inline void parallel_for(int count, int threads, const std::function<void(int)>& f) {
    if (count <= 0) return;
    if (threads <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                f(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gemcensus
