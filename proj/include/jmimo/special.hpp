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

#ifndef JMIMO_SPECIAL_HPP
#define JMIMO_SPECIAL_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jmimo
{

/// Raised when an iterative numerical procedure fails or produces a non-finite value.
class numerical_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail
{
inline constexpr int log_factorial_table_size = 512;

inline const std::array<double, log_factorial_table_size> &log_factorial_table()
{
    // Filled once; std::lgamma touches signgam, so keep it out of the hot path.
    static const auto table = []
    {
        std::array<double, log_factorial_table_size> t{};
        for (int n = 0; n < log_factorial_table_size; ++n)
            t[n] = std::lgamma(static_cast<double>(n) + 1.0);
        return t;
    }();
    return table;
}
} // namespace detail

/// ln(n!) for integer n >= 0.
inline double log_factorial(int n)
{
    if (n < 0)
        throw std::domain_error("log_factorial: negative argument " + std::to_string(n));
    if (n < detail::log_factorial_table_size)
        return detail::log_factorial_table()[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

/// ln C(n, k) for 0 <= k <= n.
inline double log_binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        throw std::domain_error("log_binomial: invalid arguments (" + std::to_string(n) + ", " +
                                std::to_string(k) + ")");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// Integral of (1-x)^a (1+x)^b over [-1,1], i.e. 2^(a+b+1) a! b! / (a+b+1)!.
template <class Real = double>
Real jacobi_weight_mass(int a, int b)
{
    if (a < 0 || b < 0)
        throw std::domain_error("jacobi_weight_mass: negative exponent");
    // 2^(a+b+1) / ((a+b+1) C(a+b, a)), with the binomial built up factor by factor
    Real mass = Real(2) / (a + b + 1);
    for (int j = 1; j <= a; ++j)
        mass *= Real(2 * j) / (b + j);
    for (int j = 0; j < b; ++j)
        mass *= 2;
    return mass;
}

} // namespace jmimo

#endif
