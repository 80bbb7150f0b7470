//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/core/parallel.hpp
//! \brief Static-partition parallel loop over an index range
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Call \c fn(i) for every i in [0, n) using up to \c threads workers.
 *
 * Each worker gets a contiguous block. Callers must write only to slots
 * owned by index i; with that discipline the result does not depend on the
 * thread count. The first exception thrown by any worker is rethrown.
 */
template<class F>
void parallel_for(std::size_t n, int threads, F&& fn)
{
    std::size_t nt = std::clamp<std::size_t>(
        threads > 0 ? static_cast<std::size_t>(threads) : 1, 1, std::max<std::size_t>(n, 1));
    if (nt == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(nt);
    std::size_t block = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t)
    {
        std::size_t lo = t * block;
        std::size_t hi = std::min(n, lo + block);
        if (lo >= hi)
            break;
        workers.emplace_back([&, lo, hi] {
            try
            {
                for (std::size_t i = lo; i < hi; ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& w : workers)
        w.join();
    if (error)
        std::rethrow_exception(error);
}

//---------------------------------------------------------------------------//
}  // namespace rte
