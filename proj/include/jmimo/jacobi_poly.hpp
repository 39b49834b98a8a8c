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

/**
 * @file jacobi_poly.hpp
 * @brief Jacobi polynomials P_n^{a,b} with integer parameters, their norms and the
 *        diagonal Christoffel-Darboux kernel.
 *
 * The polynomials are orthogonal on [-1,1] under the weight (1-x)^a (1+x)^b. Evaluation
 * always goes through the three-term recurrence in the degree, which is stable on [-1,1].
 *
 * The diagonal kernel K(x) = sum_{k<r} P_k(x)^2 / ||P_k||^2 is available in two forms:
 * the direct sum, and the closed two-product form
 *
 *     K(x) = M * [ P_{r-1}^{a,b} P_{r-1}^{a+1,b+1} - N * P_r^{a,b} P_{r-2}^{a+1,b+1} ]
 *
 * obtained from the Christoffel-Darboux formula and d/dx P_n^{a,b} = (n+a+b+1)/2 P_{n-1}^{a+1,b+1}.
 * P_{-1} is taken to be identically zero, which makes r = 1 a regular case.
 */

#ifndef JMIMO_JACOBI_POLY_HPP
#define JMIMO_JACOBI_POLY_HPP

#include "jmimo/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace jmimo
{

/// Slack allowed outside [-1,1] so quadrature nodes with roundoff are accepted.
inline constexpr double jacobi_domain_slack = 1e-12;

/// Integer Jacobi parameters (a, b) and the kernel degree r.
struct JacobiParams
{
    int a = 0;
    int b = 0;
    int r = 1;

    JacobiParams() = default;
    JacobiParams(int a_, int b_, int r_) : a(a_), b(b_), r(r_)
    {
        if (a < 0 || b < 0 || r < 1)
            throw std::domain_error("JacobiParams: require a >= 0, b >= 0, r >= 1 (got a=" +
                                    std::to_string(a) + ", b=" + std::to_string(b) +
                                    ", r=" + std::to_string(r) + ")");
    }

    friend bool operator==(const JacobiParams &, const JacobiParams &) = default;
};

/// Prefactor M and ratio N of the closed-form kernel.
struct KernelConstants
{
    double M = 0.0;
    double N = 0.0;
};

namespace detail
{
template <class Real>
void check_jacobi_args(int n, int a, int b, const Real &x)
{
    using std::abs;
    if (n < 0 || a < 0 || b < 0)
        throw std::domain_error("jacobi_eval: negative degree or parameter (n=" + std::to_string(n) +
                                ", a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
    if (!(abs(x) <= 1 + jacobi_domain_slack))
        throw std::domain_error("jacobi_eval: x outside [-1,1]");
}

// Returns {P_{n-1}(x), P_n(x)} with P_{-1} = 0. No argument checks.
template <class Real>
std::pair<Real, Real> jacobi_pair_unchecked(int n, int a, int b, const Real &x)
{
    if (n < 0)
        return {Real(0), Real(0)};
    const Real ad = a, bd = b;
    Real prev = 0;
    Real cur = 1;
    if (n == 0)
        return {prev, cur};
    prev = cur;
    cur = (2 * (ad + 1) + (ad + bd + 2) * (x - 1)) / 2;
    for (int k = 2; k <= n; ++k)
    {
        // Integer-valued coefficients, exact in any floating type.
        const Real c = k + ad + bd;
        const Real c2 = 2 * k + ad + bd;
        const Real a1 = 2 * k * c * (c2 - 2);
        const Real a2 = (c2 - 1) * (ad * ad - bd * bd);
        const Real a3 = (c2 - 2) * (c2 - 1) * c2;
        const Real a4 = 2 * (k + ad - 1) * (k + bd - 1) * c2;
        const Real next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    return {prev, cur};
}
} // namespace detail

/// P_n^{a,b}(x) by the three-term recurrence in n. Real may be any floating type.
template <class Real = double>
Real jacobi_eval(int n, int a, int b, std::type_identity_t<Real> x)
{
    detail::check_jacobi_args(n, a, b, x);
    return detail::jacobi_pair_unchecked(n, a, b, x).second;
}

/// {P_{n-1}^{a,b}(x), P_n^{a,b}(x)} from a single recurrence pass; P_{-1} = 0.
template <class Real = double>
std::pair<Real, Real> jacobi_eval_pair(int n, int a, int b, std::type_identity_t<Real> x)
{
    detail::check_jacobi_args(n, a, b, x);
    return detail::jacobi_pair_unchecked(n, a, b, x);
}

/// B_{k,a,b} = ||P_k^{a,b}||^2 / 2^{a+b+1} = C(2k+a+b,k) / ((2k+a+b+1) C(2k+a+b,k+a)).
inline double jacobi_norm_b(int k, int a, int b)
{
    if (k < 0 || a < 0 || b < 0)
        throw std::domain_error("jacobi_norm_b: negative degree or parameter");
    // C(2k+a+b,k)/C(2k+a+b,k+a) = (k+a)!(k+b)! / (k!(k+a+b)!)
    return std::exp(log_factorial(k + a) + log_factorial(k + b) - log_factorial(k) -
                    log_factorial(k + a + b) - std::log(2.0 * k + a + b + 1.0));
}

/// ||P_k^{a,b}||^2 under the weight (1-x)^a (1+x)^b.
inline double jacobi_norm_sq(int k, int a, int b)
{
    return std::exp2(a + b + 1) * jacobi_norm_b(k, a, b);
}

inline KernelConstants kernel_constants(const JacobiParams &p)
{
    const int r = p.r, a = p.a, b = p.b;
    if (r + a - 1 < 0 || r + b - 1 < 0)
        throw std::domain_error("kernel_constants: r+a-1 and r+b-1 must be nonnegative");
    KernelConstants k;
    k.M = std::exp(log_factorial(r + a + b + 1) + log_factorial(r) - (a + b + 1) * std::numbers::ln2 -
                   log_factorial(r + a - 1) - log_factorial(r + b - 1) - std::log(2.0 * r + a + b));
    k.N = static_cast<double>(r + a + b) / static_cast<double>(r + a + b + 1);
    return k;
}

/// Direct-sum kernel with the node-independent inverse norms precomputed.
///
/// Each term's polynomial is evaluated on its own, which is what a literal evaluation
/// of the sum costs (quadratic in r per point).
class KernelSum
{
public:
    explicit KernelSum(const JacobiParams &p) : params_(p), inv_norm_sq_(p.r)
    {
        for (int k = 0; k < p.r; ++k)
            inv_norm_sq_[k] = 1.0 / jacobi_norm_sq(k, p.a, p.b);
    }

    double operator()(double x) const
    {
        double sum = 0.0;
        for (int k = 0; k < params_.r; ++k)
        {
            const double pk = detail::jacobi_pair_unchecked(k, params_.a, params_.b, x).second;
            sum += pk * pk * inv_norm_sq_[k];
        }
        return sum;
    }

    const JacobiParams &params() const { return params_; }

private:
    JacobiParams params_;
    std::vector<double> inv_norm_sq_;
};

/// Closed two-product kernel form with M and N precomputed.
class KernelClosed
{
public:
    explicit KernelClosed(const JacobiParams &p) : params_(p), constants_(kernel_constants(p)) {}

    /// The bracket P_{r-1}^{a,b} P_{r-1}^{a+1,b+1} - N P_r^{a,b} P_{r-2}^{a+1,b+1} split into its
    /// two products (first, second) so callers can integrate either one alone.
    std::pair<double, double> products(double x) const
    {
        const int r = params_.r, a = params_.a, b = params_.b;
        const auto [p_rm1, p_r] = detail::jacobi_pair_unchecked(r, a, b, x);
        const auto [q_rm2, q_rm1] = detail::jacobi_pair_unchecked(r - 1, a + 1, b + 1, x);
        return {p_rm1 * q_rm1, p_r * q_rm2};
    }

    double operator()(double x) const
    {
        const auto [first, second] = products(x);
        return constants_.M * (first - constants_.N * second);
    }

    const JacobiParams &params() const { return params_; }
    const KernelConstants &constants() const { return constants_; }

private:
    JacobiParams params_;
    KernelConstants constants_;
};

/// sum_{k=0}^{r-1} P_k^{a,b}(x)^2 / ||P_k^{a,b}||^2
inline double cd_kernel_sum(const JacobiParams &p, double x)
{
    detail::check_jacobi_args(p.r, p.a, p.b, x);
    return KernelSum(p)(x);
}

/// Christoffel-Darboux closed form of the same kernel.
inline double cd_kernel_closed(const JacobiParams &p, double x)
{
    detail::check_jacobi_args(p.r, p.a, p.b, x);
    return KernelClosed(p)(x);
}

/**
 * Closed form of the mixed weighted integral
 *
 *     int_{-1}^{1} (1-x)^c (1+x)^b P_n^{a,b}(x) P_m^{c,b}(x) dx
 *   = 2^{b+c+1} (a+b+m+n)! (b+n)! (c+m)! (a-c+n-m-1)!
 *     / ( m! (n-m)! (a+b+n)! (b+c+m+n+1)! (a-c-1)! )
 *
 * valid for n >= m >= 0 and a > c >= 0.
 */
inline double jacobi_mixed_integral(int n, int m, int a, int b, int c)
{
    if (m < 0 || n < m || c < 0 || a <= c || b < 0)
        throw std::domain_error("jacobi_mixed_integral: require n >= m >= 0, a > c >= 0, b >= 0");
    const double log_value = (b + c + 1) * std::numbers::ln2 + log_factorial(a + b + m + n) +
                             log_factorial(b + n) + log_factorial(c + m) +
                             log_factorial(a - c + n - m - 1) - log_factorial(m) -
                             log_factorial(n - m) - log_factorial(a + b + n) -
                             log_factorial(b + c + m + n + 1) - log_factorial(a - c - 1);
    return std::exp(log_value);
}

} // namespace jmimo

#endif
