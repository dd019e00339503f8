/*
   Copyright 2026 The memphase Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace memphase {

/// Number of worker threads: set_worker_count override, else the
/// MEMPHASE_THREADS environment variable, else hardware concurrency.
std::size_t worker_count();
/// 0 restores the environment/hardware default.
void set_worker_count(std::size_t workers);

/// Calls fn(i) for i in [0, tasks) on up to worker_count() threads. Callers
/// write results into per-task slots and reduce them in index order, so the
/// outcome does not depend on scheduling. The first exception is rethrown.
template <class Fn>
void run_parallel(std::size_t tasks, Fn&& fn)
{
    const std::size_t workers = std::min(worker_count(), tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next++; i < tasks; i = next++)
                    fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace memphase
