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

#ifndef XC_CORE_PARALLEL_HPP
#define XC_CORE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace xc {

// Paths per random stream. Chunk layout is fixed so that results do not
// depend on the number of workers.
inline constexpr std::size_t kChunk = 2048;

unsigned default_workers();

// Calls body(chunk, begin, end) for every chunk of [0, n). Chunks are
// distributed over `workers` threads; the first exception is rethrown.
void for_each_chunk(
    std::size_t n, unsigned workers,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
    std::size_t chunk = kChunk);

}  // namespace xc

#endif  // XC_CORE_PARALLEL_HPP
