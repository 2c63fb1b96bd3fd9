#pragma once

#include <cstddef>
#include <exception>
#include <algorithm>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sepfi {

/// Name of the environment variable overriding the worker-thread count.
inline constexpr const char* kThreadsEnv = "SEPFI_THREADS";

/// Worker count: SEPFI_THREADS if set to a positive integer, else the hardware concurrency.
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers.
///
/// Indices are handed out in contiguous blocks, so callers that write to
/// slot i of a pre-sized vector get results in index order regardless of the
/// thread count. The first exception thrown by any task is rethrown.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, std::size_t threads = default_thread_count())
{
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    threads = std::min(threads, count);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = count * t / threads;
        const std::size_t end = count * (t + 1) / threads;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace sepfi
