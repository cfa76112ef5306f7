#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tadeval {

// Worker count: TADEVAL_THREADS if set and positive, else hardware concurrency.
inline std::size_t default_thread_count() {
    if (const char* env = std::getenv("TADEVAL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Calls fn(i) for i in [0, n). Work is split into contiguous blocks of `grain`
// indices; fn must only write state owned by index i, so output never depends
// on the number of workers.
template <class Fn>
void parallel_for(std::size_t n, std::size_t grain, Fn&& fn, std::size_t threads = default_thread_count()) {
    grain = std::max<std::size_t>(1, grain);
    const std::size_t blocks = (n + grain - 1) / grain;
    threads = std::min(threads, blocks);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::mutex mu;
    std::size_t next = 0;
    std::exception_ptr err;
    auto worker = [&] {
        for (;;) {
            std::size_t b;
            {
                std::lock_guard lock(mu);
                if (next >= blocks || err) return;
                b = next++;
            }
            try {
                const std::size_t hi = std::min(n, (b + 1) * grain);
                for (std::size_t i = b * grain; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace tadeval
