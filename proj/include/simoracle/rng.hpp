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

#ifndef SIMORACLE_RNG_HPP_
#define SIMORACLE_RNG_HPP_

// Counter-style keyed random streams.
//
// Every random draw in the library is a pure function of
// (master_seed, stream index, domain, counter). Nothing carries generator
// state between draws, so simulations, RR searches and sketch ranks can be
// produced in any order or on any number of workers with identical results.

#include <cmath>
#include <cstdint>

namespace simoracle {

// Separates the uses of one (seed, index) key so they never share draws.
enum class Domain : std::uint64_t {
  kEdge = 1,        // IC edge / b-dependence group coins
  kLtChoice = 2,    // LT incoming-edge selection per node
  kComponent = 3,   // mixture component choice
  kRrsNode = 4,     // RR search target node
  kRrsEdge = 5,     // marginal RR search edge coins
  kSketchRank = 6,  // bottom-k ranks of (node, simulation) pairs
  kDerive = 7,      // child master seeds
};

// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class KeyedStream {
 public:
  constexpr KeyedStream(std::uint64_t master_seed, std::uint64_t index,
                        Domain domain)
      : key_(mix64(mix64(mix64(master_seed) ^ index) ^
                   static_cast<std::uint64_t>(domain))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ ^ mix64(counter + 0x632be59bd9b4e019ULL));
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe to take the logarithm of.
  double uniform_open0(std::uint64_t counter) const {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(std::uint64_t counter, double p) const {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return uniform(counter) < p;
  }

  // Exp(rate) draw; rate 0 gives +inf.
  double exponential(std::uint64_t counter, double rate) const {
    return -std::log(uniform_open0(counter)) / rate;
  }

 private:
  std::uint64_t key_;
};

// Derives an independent master seed, e.g. for per-round validation oracles.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::uint64_t tag, std::uint64_t index) {
  return KeyedStream(master_seed, tag, Domain::kDerive).bits(index);
}

}  // namespace simoracle

#endif  // SIMORACLE_RNG_HPP_
