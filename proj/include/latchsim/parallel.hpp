// Copyright 2026 The latchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace latchsim {

// Runs fn(i) for i in [0, n). Each index is independent and results must be
// written to index-addressed slots by the caller, so the outcome is
// identical for any thread count, including one.
template <typename Fn>
void parallel_for_indexed(int64_t n, int threads, Fn&& fn) {
    if (n <= 0) return;
    if (threads < 1) threads = 1;
    if (threads == 1 || n == 1) {
        for (int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nw = static_cast<int>(std::min<int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::vector<std::exception_ptr> errors(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w]() {
            try {
                const int64_t lo = n * w / nw;
                const int64_t hi = n * (w + 1) / nw;
                for (int64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace latchsim
