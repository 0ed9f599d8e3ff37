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

// Runs every acceptance check and prints one PASS/FAIL line per check.
// Usage: acceptance [seed] [--json]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include "simoracle/bench.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20260101;
  bool json = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--json") == 0) {
      json = true;
    } else {
      seed = std::strtoull(argv[i], nullptr, 10);
    }
  }
  const auto results = simoracle::run_bench(seed, 1, 4);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-40s %7.2fs%s%s\n", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds, r.detail.empty() ? "" : "  ",
                r.detail.c_str());
    if (!r.passed) ++failed;
  }
  if (json) {
    for (const auto& r : results) std::cout << to_json(r).dump() << '\n';
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
