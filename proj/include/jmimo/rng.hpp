// SPDX-License-Identifier: Apache-2.0
//
// jmimo: ergodic capacity of Jacobi MIMO channels
// Copyright (C) 2026 The jmimo authors
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

#ifndef JMIMO_RNG_HPP
#define JMIMO_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace jmimo
{

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64
{
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    /// Independent stream for one sample: depends only on (seed, index).
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index)
    {
        return SplitMix64(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Uniform on (0, 1] with 53 random bits.
template <class Generator>
double uniform_open_closed(Generator &gen)
{
    return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

/// (g1 + i g2) / sqrt(2) with g1, g2 independent standard normals (Box-Muller).
template <class Generator>
std::complex<double> complex_standard_normal(Generator &gen)
{
    const double radius = std::sqrt(-std::log(uniform_open_closed(gen)));
    const double angle = 2.0 * std::numbers::pi * uniform_open_closed(gen);
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace jmimo

#endif
