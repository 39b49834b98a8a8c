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

#ifndef JMIMO_TRIDIAGONAL_HPP
#define JMIMO_TRIDIAGONAL_HPP

#include "jmimo/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace jmimo
{

/// Eigenvalues (ascending) of a symmetric tridiagonal matrix, together with the first
/// component of each normalized eigenvector.
template <class Real = double>
struct BasicTridiagonalEigen
{
    std::vector<Real> values;
    std::vector<Real> first_components;
};

using TridiagonalEigen = BasicTridiagonalEigen<double>;

/**
 * Implicit-shift QL iteration (Wilkinson shift) for a symmetric tridiagonal matrix.
 *
 * Only the first row of the accumulated rotation product is tracked, which is all the
 * Golub-Welsch construction needs.
 *
 * @param diagonal      n diagonal entries
 * @param off_diagonal  n-1 sub-diagonal entries
 */
template <class Real = double>
BasicTridiagonalEigen<Real> symmetric_tridiagonal_eigen(std::span<const std::type_identity_t<Real>> diagonal,
                                                        std::span<const std::type_identity_t<Real>> off_diagonal,
                                                        int max_iterations_per_value = 60)
{
    using std::abs, std::hypot, std::copysign, std::isfinite;
    const int n = static_cast<int>(diagonal.size());
    if (n == 0)
        return {};
    if (static_cast<int>(off_diagonal.size()) != n - 1)
        throw std::invalid_argument("symmetric_tridiagonal_eigen: off-diagonal must have n-1 entries");

    std::vector<Real> d(diagonal.begin(), diagonal.end());
    std::vector<Real> e(n, Real(0));
    std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());
    std::vector<Real> z(n, Real(0));
    z[0] = 1;

    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int l = 0; l < n; ++l)
    {
        int iterations = 0;
        int m = l;
        do
        {
            for (m = l; m < n - 1; ++m)
            {
                const Real dd = abs(d[m]) + abs(d[m + 1]);
                if (abs(e[m]) <= eps * dd)
                    break;
            }
            if (m == l)
                break;
            if (iterations++ == max_iterations_per_value)
                throw numerical_error("symmetric_tridiagonal_eigen: no convergence for eigenvalue " +
                                      std::to_string(l) + " of " + std::to_string(n) + " after " +
                                      std::to_string(max_iterations_per_value) +
                                      " iterations (|e| = " + std::to_string(static_cast<double>(abs(e[l]))) + ")");

            Real g = (d[l + 1] - d[l]) / (2 * e[l]);
            Real r = hypot(g, Real(1));
            g = d[m] - d[l] + e[l] / (g + copysign(r, g));
            Real s = 1, c = 1, p = 0;
            int i = m - 1;
            bool underflow = false;
            for (; i >= l; --i)
            {
                const Real f = s * e[i];
                const Real bb = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if (r == 0)
                {
                    d[i + 1] -= p;
                    e[m] = 0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;

                const Real h = z[i + 1];
                z[i + 1] = s * z[i] + c * h;
                z[i] = c * z[i] - s * h;
            }
            if (underflow)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0;
        } while (m != l);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

    BasicTridiagonalEigen<Real> out;
    out.values.reserve(n);
    out.first_components.reserve(n);
    for (int idx : order)
    {
        if (!isfinite(d[idx]) || !isfinite(z[idx]))
            throw numerical_error("symmetric_tridiagonal_eigen: non-finite result");
        out.values.push_back(d[idx]);
        out.first_components.push_back(z[idx]);
    }
    return out;
}

} // namespace jmimo

#endif
