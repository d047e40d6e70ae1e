// SPDX-License-Identifier: Apache-2.0
//
// hmimo - correlation, efficiency and capacity models for dense MIMO arrays
// Copyright (C) 2026 The hmimo Authors
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

#ifndef HMIMO_PARALLEL_HPP
#define HMIMO_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hmimo
{
    inline constexpr const char *workers_env_var = "HMIMO_WORKERS";

    // Worker count: explicit request, else $HMIMO_WORKERS, else hardware concurrency.
    inline unsigned resolve_workers(unsigned requested = 0)
    {
        if (requested > 0)
            return requested;
        if (const char *env = std::getenv(workers_env_var))
        {
            char *end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
                return static_cast<unsigned>(v);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // Runs body(i) for i in [0, count). Each index is processed exactly once and
    // callers write results into per-index slots, so output never depends on
    // scheduling. The first exception thrown by any worker is rethrown.
    template <typename Body>
    void parallel_for(std::size_t count, unsigned workers, Body &&body)
    {
        workers = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        auto run = [&]
        {
            try
            {
                for (std::size_t i = next++; i < count; i = next++)
                    body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        };

        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run);
        pool.clear();
        if (failure)
            std::rethrow_exception(failure);
    }
} // namespace hmimo

#endif
