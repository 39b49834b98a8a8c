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
 * @file capacity.hpp
 * @brief Ergodic capacity of the Jacobi MIMO channel.
 *
 * The channel H is the upper-left m_r x m_t block of an m x m Haar unitary. With
 * a = |m_r - m_t|, b = m - m_r - m_t and r = min(m_r, m_t), and for m_t + m_r <= m,
 *
 *     C(rho) = int_{-1}^{1} (1-x)^a (1+x)^b log2(1 + rho (1-x)/2) K(x) dx
 *
 * where K is the diagonal Christoffel-Darboux kernel of P^{a,b} of degree r. All
 * integrals are taken with the (a,b) Gauss-Jacobi rule, graded towards x = 1 once
 * rho > 1 since the logarithm has its branch point at x = 1 + 2/rho. Configurations with
 * m_t + m_r > m are reduced by
 *
 *     C_{m_t,m_r}^m = (m_t + m_r - m) log2(1 + rho) + C_{m-m_r, m-m_t}^m.
 *
 * Capacities are in bits per channel use; rho is linear.
 */

#ifndef JMIMO_CAPACITY_HPP
#define JMIMO_CAPACITY_HPP

#include "jmimo/jacobi_poly.hpp"
#include "jmimo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jmimo
{

/// Fiber with m modes/cores, m_t of them excited at the input and m_r read at the output.
class ChannelConfig
{
public:
    ChannelConfig(int m, int m_t, int m_r) : m_(m), m_t_(m_t), m_r_(m_r)
    {
        if (m < 1 || m_t < 1 || m_t > m || m_r < 1 || m_r > m)
            throw std::invalid_argument("ChannelConfig: require 1 <= m_t, m_r <= m (got m=" +
                                        std::to_string(m) + ", m_t=" + std::to_string(m_t) +
                                        ", m_r=" + std::to_string(m_r) + ")");
    }

    int m() const { return m_; }
    int m_t() const { return m_t_; }
    int m_r() const { return m_r_; }

    int a() const { return std::abs(m_r_ - m_t_); }
    /// Negative when m_t + m_r > m.
    int b() const { return m_ - m_r_ - m_t_; }
    int r() const { return std::min(m_r_, m_t_); }

    /// True when m_t + m_r <= m, i.e. the integral forms apply directly.
    bool is_direct() const { return m_t_ + m_r_ <= m_; }

    JacobiParams jacobi_params() const
    {
        require_direct("jacobi_params");
        return JacobiParams(a(), b(), r());
    }

    /// (m - m_r, m - m_t) on the same fiber; empty when that leaves no active mode.
    std::optional<ChannelConfig> reflected() const
    {
        if (m_ - m_r_ < 1 || m_ - m_t_ < 1)
            return std::nullopt;
        return ChannelConfig(m_, m_ - m_r_, m_ - m_t_);
    }

    void require_direct(std::string_view what) const
    {
        if (!is_direct())
            throw std::invalid_argument(std::string(what) + ": requires m_t + m_r <= m (got m=" +
                                        std::to_string(m_) + ", m_t=" + std::to_string(m_t_) +
                                        ", m_r=" + std::to_string(m_r_) + ")");
    }

    friend bool operator==(const ChannelConfig &, const ChannelConfig &) = default;

private:
    int m_;
    int m_t_;
    int m_r_;
};

/// Linear signal-to-noise ratio.
struct Snr
{
    double rho = 0.0;

    Snr() = default;
    explicit Snr(double linear) : rho(linear)
    {
        if (!std::isfinite(linear) || linear < 0.0)
            throw std::invalid_argument("Snr: rho must be finite and >= 0");
    }

    static Snr from_db(double db) { return Snr(std::pow(10.0, db / 10.0)); }
    double db() const { return 10.0 * std::log10(rho); }
};

enum class Method
{
    SumForm,
    CdForm,
    LowerBound,
    LowSnr,
    MonteCarlo
};

inline std::string_view method_name(Method method)
{
    switch (method)
    {
    case Method::SumForm: return "sum";
    case Method::CdForm: return "cd";
    case Method::LowerBound: return "lb";
    case Method::LowSnr: return "lowsnr";
    case Method::MonteCarlo: return "mc";
    }
    return "?";
}

inline Method parse_method(std::string_view name)
{
    for (Method method : {Method::SumForm, Method::CdForm, Method::LowerBound, Method::LowSnr,
                          Method::MonteCarlo})
        if (method_name(method) == name)
            return method;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected sum, cd, lb, lowsnr or mc)");
}

struct CapacityPoint
{
    double snr_db = 0.0;
    double capacity_bits = 0.0;
};

struct CapacityCurve
{
    ChannelConfig config;
    Method method;
    std::vector<CapacityPoint> points;
};

namespace detail
{
inline double log2_gain(double rho, double x) { return std::log1p(0.5 * rho * (1.0 - x)) / std::numbers::ln2; }

inline int capacity_levels(double rho) { return graded_levels(2.0 / rho); }

inline const QuadratureRule &direct_rule(const ChannelConfig &config, int nodes, double rho,
                                         std::shared_ptr<const QuadratureRule> &holder)
{
    holder = cached_rule(config.a(), config.b(), nodes, capacity_levels(rho));
    return *holder;
}
} // namespace detail

/// Integral with the kernel written as the direct sum over degrees 0..r-1.
inline double capacity_sum_form(const ChannelConfig &config, Snr snr, int nodes = default_quadrature_nodes)
{
    config.require_direct("capacity_sum_form");
    if (snr.rho == 0.0)
        return 0.0;
    std::shared_ptr<const QuadratureRule> holder;
    const QuadratureRule &rule = detail::direct_rule(config, nodes, snr.rho, holder);
    const KernelSum kernel(config.jacobi_params());
    const double rho = snr.rho;
    return integrate(rule, [&](double x) { return detail::log2_gain(rho, x) * kernel(x); });
}

/// Integral with the kernel in its closed Christoffel-Darboux form.
inline double capacity_cd_form(const ChannelConfig &config, Snr snr, int nodes = default_quadrature_nodes)
{
    config.require_direct("capacity_cd_form");
    if (snr.rho == 0.0)
        return 0.0;
    std::shared_ptr<const QuadratureRule> holder;
    const QuadratureRule &rule = detail::direct_rule(config, nodes, snr.rho, holder);
    const KernelClosed kernel(config.jacobi_params());
    const double rho = snr.rho;
    const double bracket = integrate(rule, [&](double x)
    {
        const auto [first, second] = kernel.products(x);
        return detail::log2_gain(rho, x) * (first - kernel.constants().N * second);
    });
    return kernel.constants().M * bracket;
}

/// Closed form with the second product dropped; never exceeds capacity_cd_form.
inline double capacity_lower_bound(const ChannelConfig &config, Snr snr, int nodes = default_quadrature_nodes)
{
    config.require_direct("capacity_lower_bound");
    if (snr.rho == 0.0)
        return 0.0;
    std::shared_ptr<const QuadratureRule> holder;
    const QuadratureRule &rule = detail::direct_rule(config, nodes, snr.rho, holder);
    const KernelClosed kernel(config.jacobi_params());
    const double rho = snr.rho;
    const double first = integrate(rule, [&](double x) { return detail::log2_gain(rho, x) * kernel.products(x).first; });
    return kernel.constants().M * first;
}

/**
 * Q = int w(x) log2(1 + rho(1-x)/2) P_r^{a,b}(x) P_{r-2}^{a+1,b+1}(x) dx.
 *
 * capacity_cd_form = capacity_lower_bound - M N Q. Exactly zero for r < 2.
 */
inline double q_term(const ChannelConfig &config, Snr snr, int nodes = default_quadrature_nodes)
{
    config.require_direct("q_term");
    if (config.r() < 2 || snr.rho == 0.0)
        return 0.0;
    std::shared_ptr<const QuadratureRule> holder;
    const QuadratureRule &rule = detail::direct_rule(config, nodes, snr.rho, holder);
    const KernelClosed kernel(config.jacobi_params());
    const double rho = snr.rho;
    return integrate(rule, [&](double x) { return detail::log2_gain(rho, x) * kernel.products(x).second; });
}

/// First-order law rho m_t m_r / (m ln 2); holds for every configuration.
inline double capacity_low_snr(const ChannelConfig &config, Snr snr)
{
    return snr.rho * config.m_t() * config.m_r() / (config.m() * std::numbers::ln2);
}

/// Applies the reflection identity around a direct-form evaluator.
template <class DirectForm>
double with_reflection(const ChannelConfig &config, Snr snr, DirectForm &&direct)
{
    if (config.is_direct())
        return direct(config, snr);
    const int excess = config.m_t() + config.m_r() - config.m();
    const double deterministic = excess * std::log2(1.0 + snr.rho);
    const auto reflected = config.reflected();
    // A reflected configuration with no active mode contributes nothing.
    return reflected ? deterministic + direct(*reflected, snr) : deterministic;
}

/// Ergodic capacity for any valid configuration (closed-form kernel, reflection when needed).
inline double capacity(const ChannelConfig &config, Snr snr, int nodes = default_quadrature_nodes)
{
    return with_reflection(config, snr, [nodes](const ChannelConfig &c, Snr s) { return capacity_cd_form(c, s, nodes); });
}

/**
 * Evaluates an analytic method on any valid configuration. Sum, closed and lower-bound
 * forms go through the reflection identity when m_t + m_r > m (for the bound, the
 * reflected part is bounded, the deterministic part is exact).
 */
inline double analytic_capacity(Method method, const ChannelConfig &config, Snr snr,
                                int nodes = default_quadrature_nodes)
{
    switch (method)
    {
    case Method::SumForm:
        return with_reflection(config, snr, [nodes](const ChannelConfig &c, Snr s) { return capacity_sum_form(c, s, nodes); });
    case Method::CdForm:
        return capacity(config, snr, nodes);
    case Method::LowerBound:
        return with_reflection(config, snr, [nodes](const ChannelConfig &c, Snr s) { return capacity_lower_bound(c, s, nodes); });
    case Method::LowSnr:
        return capacity_low_snr(config, snr);
    case Method::MonteCarlo:
        break;
    }
    throw std::invalid_argument("analytic_capacity: Monte Carlo is not an analytic method");
}

inline CapacityCurve capacity_curve(Method method, const ChannelConfig &config,
                                    const std::vector<double> &snr_db,
                                    int nodes = default_quadrature_nodes)
{
    CapacityCurve curve{config, method, {}};
    curve.points.reserve(snr_db.size());
    for (double db : snr_db)
        curve.points.push_back({db, analytic_capacity(method, config, Snr::from_db(db), nodes)});
    return curve;
}

} // namespace jmimo

#endif
