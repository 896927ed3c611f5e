// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace seismic {

/// Worker count used when callers pass 0.
inline unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, n) on `workers` threads (0 = hardware concurrency).
/// Work is handed out in small chunks; results must not depend on which
/// thread runs which index. The first exception thrown by any task is
/// rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn)
{
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    constexpr std::size_t kChunk = 16;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(kChunk);
                if (begin >= n) break;
                const std::size_t end = std::min(n, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) fn(i);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(n);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace seismic
