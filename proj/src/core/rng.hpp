// Copyright 2026 The extreme-chains Authors.
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

#ifndef XC_CORE_RNG_HPP
#define XC_CORE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace xc {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of sub-stream (tag, index) under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (tag * 0xd6e8feb86659fd93ULL);
  std::uint64_t b = splitmix64(s);
  s = b ^ (index * 0xa0761d6478bd642fULL);
  return splitmix64(s);
}

inline Rng make_stream(std::uint64_t master, std::uint64_t tag,
                       std::uint64_t index) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(derive_seed(master, tag, index)),
      static_cast<std::uint32_t>(derive_seed(master, tag, index) >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(tag)};
  return Rng(seq);
}

// Uniform on the open interval (0, 1).
inline double uniform01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double std_exponential(Rng& rng) { return -std::log(uniform01(rng)); }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

double std_normal(Rng& rng);

// Master seed, worker count. Results never depend on `workers`.
struct Exec {
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

}  // namespace xc

#endif  // XC_CORE_RNG_HPP
