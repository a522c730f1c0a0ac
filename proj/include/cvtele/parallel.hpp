#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cvtele {

/// Environment variable holding the worker count used by sweeps and the oracle.
inline constexpr const char* kWorkersEnv = "CVTELE_WORKERS";

/// Reads kWorkersEnv. Unset means 1; anything but an integer >= 1 throws
/// DomainError.
unsigned workers_from_env();

/// Calls fn(i) for i in [0, n) on `workers` threads, each owning a contiguous
/// index range. fn must only write to slot i of caller-owned storage; the
/// first exception thrown by any worker is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    const std::size_t count = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (count == 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> threads;
    threads.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t begin = n * w / count;
        const std::size_t end = n * (w + 1) / count;
        threads.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i)
                    fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    threads.clear();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace cvtele
