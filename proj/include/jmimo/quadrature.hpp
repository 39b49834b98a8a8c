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
 * @file quadrature.hpp
 * @brief Gauss-Jacobi rules for the weight (1-x)^a (1+x)^b on [-1,1] (Golub-Welsch).
 *
 * An n-point rule integrates w(x) p(x) exactly for every polynomial p of degree <= 2n-1.
 * Rules are immutable once built; rule_cache() hands out shared copies keyed on (a, b, n, levels).
 *
 * A graded rule (levels > 0) splits [-1,1] at 1 - 2 s^j, j = 1..levels, with s = 1/5, and puts an
 * n-point rule on every panel: Gauss-Jacobi (0,b) on the leftmost, Gauss-Jacobi (a,0) on the
 * rightmost, Gauss-Legendre in between, with the remaining weight factors folded into the weights.
 * Polynomial exactness is kept up to degree 2n-1-a-b, and integrands with a singularity just
 * beyond x = 1 converge at a rate independent of its distance.
 */

#ifndef JMIMO_QUADRATURE_HPP
#define JMIMO_QUADRATURE_HPP

#include "jmimo/special.hpp"
#include "jmimo/tridiagonal.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace jmimo
{

inline constexpr int default_quadrature_nodes = 64;

template <class Real = double>
struct BasicQuadratureRule
{
    int a = 0;
    int b = 0;
    int levels = 0;
    std::vector<Real> nodes;   // strictly increasing, inside (-1,1)
    std::vector<Real> weights; // positive

    std::size_t size() const { return nodes.size(); }
};

using QuadratureRule = BasicQuadratureRule<double>;

/// Recurrence coefficients of the monic Jacobi family: p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}.
template <class Real = double>
Real jacobi_recurrence_alpha(int k, int a, int b)
{
    if (k == 0)
        return Real(b - a) / (a + b + 2);
    const Real s = 2 * k + a + b;
    return (Real(b) * b - Real(a) * a) / (s * (s + 2));
}

template <class Real = double>
Real jacobi_recurrence_beta(int k, int a, int b)
{
    const Real s = 2 * k + a + b;
    return 4 * Real(k) * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1));
}

/// n-point Gauss-Jacobi rule; Real may be any floating type.
template <class Real = double>
BasicQuadratureRule<Real> build_rule(int a, int b, int n_nodes)
{
    using std::sqrt;
    if (n_nodes < 1)
        throw std::domain_error("build_rule: n_nodes must be >= 1 (got " + std::to_string(n_nodes) + ")");
    if (a < 0 || b < 0)
        throw std::domain_error("build_rule: negative weight exponent");

    std::vector<Real> diagonal(n_nodes);
    std::vector<Real> off_diagonal(n_nodes - 1);
    for (int k = 0; k < n_nodes; ++k)
        diagonal[k] = jacobi_recurrence_alpha<Real>(k, a, b);
    for (int k = 1; k < n_nodes; ++k)
        off_diagonal[k - 1] = sqrt(jacobi_recurrence_beta<Real>(k, a, b));

    const auto eig = symmetric_tridiagonal_eigen<Real>(diagonal, off_diagonal);
    const Real mass = jacobi_weight_mass<Real>(a, b);

    BasicQuadratureRule<Real> rule;
    rule.a = a;
    rule.b = b;
    rule.nodes = eig.values;
    rule.weights.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
    {
        const Real v = eig.first_components[i];
        rule.weights[i] = mass * v * v;
    }

    for (int i = 0; i < n_nodes; ++i)
    {
        if (!(rule.nodes[i] > -1 && rule.nodes[i] < 1) || !(rule.weights[i] > 0) ||
            (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1])))
            throw numerical_error("build_rule: degenerate rule for (a=" + std::to_string(a) +
                                  ", b=" + std::to_string(b) + ", n=" + std::to_string(n_nodes) +
                                  ") at node " + std::to_string(i));
    }
    return rule;
}

inline constexpr double graded_ratio = 0.2;

/// Levels needed to resolve a singularity at distance `gap` to the right of x = 1.
inline int graded_levels(double gap)
{
    if (!(gap > 0.0))
        throw std::domain_error("graded_levels: gap must be positive");
    if (gap >= 2.0)
        return 0;
    return static_cast<int>(std::ceil(std::log(gap / 2.0) / std::log(graded_ratio)));
}

inline QuadratureRule build_graded_rule(int a, int b, int n_nodes, int levels)
{
    if (levels < 0)
        throw std::domain_error("build_graded_rule: negative level count");
    if (levels == 0)
        return build_rule(a, b, n_nodes);

    const QuadratureRule left = build_rule(0, b, n_nodes);
    const QuadratureRule middle = build_rule(0, 0, n_nodes);
    const QuadratureRule right = build_rule(a, 0, n_nodes);

    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.levels = levels;
    rule.nodes.reserve(static_cast<std::size_t>(n_nodes) * (levels + 1));
    rule.weights.reserve(rule.nodes.capacity());

    std::vector<double> breaks{-1.0};
    for (int j = 1; j <= levels; ++j)
        breaks.push_back(1.0 - 2.0 * std::pow(graded_ratio, j));
    breaks.push_back(1.0);

    for (std::size_t p = 0; p + 1 < breaks.size(); ++p)
    {
        const double lo = breaks[p];
        const double hi = breaks[p + 1];
        const double half = 0.5 * (hi - lo);
        const bool first = p == 0;
        const bool last = p + 2 == breaks.size();
        const QuadratureRule &base = first ? left : (last ? right : middle);
        const double scale = first ? std::pow(half, b + 1) : (last ? std::pow(half, a + 1) : half);
        for (std::size_t i = 0; i < base.size(); ++i)
        {
            const double t = base.nodes[i];
            const double x = last ? 1.0 - half * (1.0 - t) : lo + half * (1.0 + t);
            double w = base.weights[i] * scale;
            if (!first)
                w *= std::pow(1.0 + x, b);
            if (!last)
                w *= std::pow(1.0 - x, a);
            rule.nodes.push_back(x);
            rule.weights.push_back(w);
        }
    }

    for (std::size_t i = 0; i < rule.size(); ++i)
    {
        if (!(rule.nodes[i] > -1 && rule.nodes[i] < 1) || !(rule.weights[i] > 0) ||
            (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1])))
            throw numerical_error("build_graded_rule: degenerate rule for (a=" + std::to_string(a) +
                                  ", b=" + std::to_string(b) + ", n=" + std::to_string(n_nodes) +
                                  ", levels=" + std::to_string(levels) + ") at node " + std::to_string(i));
    }
    return rule;
}

/// sum_i w_i f(x_i); throws numerical_error naming the node if f is not finite there.
template <class Real, class F>
Real integrate(const BasicQuadratureRule<Real> &rule, F &&f)
{
    using std::isfinite;
    Real sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        const Real fx = f(rule.nodes[i]);
        if (!isfinite(fx))
            throw numerical_error("integrate: non-finite integrand at node " + std::to_string(i) +
                                  " (x = " + std::to_string(static_cast<double>(rule.nodes[i])) + ")");
        sum += rule.weights[i] * fx;
    }
    return sum;
}

/// Thread-safe cache of rules keyed on (a, b, n, levels).
class RuleCache
{
public:
    std::shared_ptr<const QuadratureRule> get(int a, int b, int n_nodes, int levels = 0)
    {
        const Key key{a, b, n_nodes, levels};
        {
            std::shared_lock lock(mutex_);
            if (auto it = rules_.find(key); it != rules_.end())
                return it->second;
        }
        auto rule = std::make_shared<const QuadratureRule>(build_graded_rule(a, b, n_nodes, levels));
        std::unique_lock lock(mutex_);
        // First insert wins; a concurrent duplicate build is discarded.
        return rules_.try_emplace(key, std::move(rule)).first->second;
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return rules_.size();
    }

    void clear()
    {
        std::unique_lock lock(mutex_);
        rules_.clear();
    }

private:
    using Key = std::tuple<int, int, int, int>;
    mutable std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const QuadratureRule>> rules_;
};

inline RuleCache &rule_cache()
{
    static RuleCache cache;
    return cache;
}

inline std::shared_ptr<const QuadratureRule> cached_rule(int a, int b, int n_nodes = default_quadrature_nodes,
                                                         int levels = 0)
{
    return rule_cache().get(a, b, n_nodes, levels);
}

} // namespace jmimo

#endif
