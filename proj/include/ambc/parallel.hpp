// SPDX-License-Identifier: Apache-2.0
//
// ambc: link-level simulator for multi-antenna ambient backscatter receivers
// Copyright (C) 2026 The ambc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AMBC_PARALLEL_HPP
#define AMBC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ambc
{
    inline int resolve_workers(int requested)
    {
        if (requested > 0)
            return requested;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : int(hw);
    }

    // Calls fn(task, worker) for task in [0, n_tasks). Tasks are handed out dynamically; callers keep
    // per-worker accumulators so the result does not depend on the schedule.
    template <typename Fn>
    void parallel_for(std::size_t n_tasks, int workers, Fn &&fn)
    {
        workers = std::max(1, std::min<int>(workers, int(std::max<std::size_t>(n_tasks, 1))));
        if (workers == 1)
        {
            for (std::size_t t = 0; t < n_tasks; ++t)
                fn(t, 0);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr err;
        std::mutex err_mu;
        auto body = [&](int w) {
            for (;;)
            {
                const std::size_t t = next.fetch_add(1);
                if (t >= n_tasks)
                    return;
                try
                {
                    fn(t, w);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err)
                        err = std::current_exception();
                    next.store(n_tasks);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(body, w);
        for (auto &th : pool)
            th.join();
        if (err)
            std::rethrow_exception(err);
    }
}

#endif
