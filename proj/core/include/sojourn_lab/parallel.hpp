#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sojourn_lab {

//! Worker count used when the caller passes 0.
inline unsigned default_workers() noexcept
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/*!
 * Run body(i) for every i in [0, count) on `workers` threads.
 *
 * Indices are handed out in fixed-size chunks from a shared counter, so the
 * assignment of indices to threads varies between runs. Callers that need
 * deterministic output must write results by index. The first exception
 * thrown by any body is rethrown on the calling thread after all workers
 * stop.
 */
template<class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body)
{
    if (workers == 0)
        workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    constexpr std::size_t chunk = 64;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed))
        {
            std::size_t const begin = next.fetch_add(chunk, std::memory_order_relaxed);
            if (begin >= count)
                return;
            std::size_t const end = std::min(begin + chunk, count);
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            }
            catch (...)
            {
                std::lock_guard lock{failure_mutex};
                if (!failure)
                    failure = std::current_exception();
                stop = true;
                return;
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace sojourn_lab
