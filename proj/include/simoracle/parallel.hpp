// Copyright 2026 The Authors.
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

#ifndef SIMORACLE_PARALLEL_HPP_
#define SIMORACLE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace simoracle {

// Process-wide worker bound (the CLI's --threads). 0 or 1 means serial.
void set_worker_count(std::size_t workers);
std::size_t worker_count();

// Calls body(worker, begin, end) on disjoint contiguous chunks covering
// [0, count). Callers write results into per-index slots and reduce in index
// order afterwards, so output never depends on the worker count. Calls made
// from inside a worker run serially.
void parallel_chunks(
    std::size_t count,
    const std::function<void(std::size_t worker, std::size_t begin,
                             std::size_t end)>& body);

template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  parallel_chunks(count, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

}  // namespace simoracle

#endif  // SIMORACLE_PARALLEL_HPP_
