#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stord
{
//! Thread count used when the caller passes 0.
inline int default_thread_count()
{
    unsigned const hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

//---------------------------------------------------------------------------//
/*!
 * Run body(i) for i in [0, n) over contiguous static blocks.
 *
 * Each index is processed exactly once; callers write results by index so the
 * outcome does not depend on the thread count. The first exception thrown by
 * any worker is rethrown after all workers join.
 */
template<class Body>
void parallel_for(std::size_t n, int threads, Body&& body)
{
    if (threads <= 0)
    {
        threads = default_thread_count();
    }
    std::size_t const workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            body(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t const block = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w)
    {
        std::size_t const begin = w * block;
        std::size_t const end = std::min(n, begin + block);
        pool.emplace_back([&, begin, end] {
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                {
                    body(i);
                }
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
    {
        t.join();
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
}

}  // namespace stord
