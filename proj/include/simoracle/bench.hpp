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

#ifndef SIMORACLE_BENCH_HPP_
#define SIMORACLE_BENCH_HPP_

// Desk-scale acceptance suites. Each check is deterministic given the master
// seed; only `seconds` depends on the machine.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace simoracle {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  nlohmann::ordered_json metrics;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kDeterminismCheck = 10;

// Ids 1..11 except the determinism check.
std::vector<int> bench_check_ids();

CheckResult run_check(int id, std::uint64_t master_seed);

// Runs the given checks with the current worker count.
std::vector<CheckResult> run_checks(const std::vector<int>& ids,
                                    std::uint64_t master_seed);

// Runs every check with `threads` workers, then reruns them with
// `other_threads` workers and appends the determinism check comparing the
// two metric documents. Restores the previous worker count.
std::vector<CheckResult> run_bench(std::uint64_t master_seed,
                                   std::size_t threads,
                                   std::size_t other_threads);

nlohmann::ordered_json to_json(const CheckResult& result);

}  // namespace simoracle

#endif  // SIMORACLE_BENCH_HPP_
