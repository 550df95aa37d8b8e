// Copyright 2026 The spinlat authors.
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

#ifndef SPINLAT_CORE_RNG_HPP
#define SPINLAT_CORE_RNG_HPP

#include <cstdint>

namespace spinlat {

// Counter-based uniform draws: every value is a pure function of
// (seed, stream, counter), so results do not depend on evaluation order
// or thread scheduling.

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    return mix64(mix64(seed ^ 0x6a09e667f3bcc909ull * stream) ^
                 0xbb67ae8584caa73bull * counter);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) {
    return static_cast<double>(counter_hash(seed, stream, counter) >> 11) *
           0x1.0p-53;
}

// Uniform on [-halfwidth, halfwidth].
inline double uniform_symmetric(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t counter, double halfwidth) {
    return halfwidth * (2.0 * uniform01(seed, stream, counter) - 1.0);
}

// Seed for realization r of an ensemble keyed by a master seed.
inline std::uint64_t realization_seed(std::uint64_t master, std::uint64_t r) {
    return counter_hash(master, 0x52ea15ull, r);
}

} // namespace spinlat

#endif
