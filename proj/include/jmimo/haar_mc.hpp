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
 * @file haar_mc.hpp
 * @brief Monte Carlo estimates of the ergodic capacity from Haar unitary samples.
 *
 * Sample i draws its Gaussians from SplitMix64::substream(seed, i), and the samples are
 * reduced in fixed-size blocks combined in index order. Estimates are therefore
 * bit-identical for any worker count.
 */

#ifndef JMIMO_HAAR_MC_HPP
#define JMIMO_HAAR_MC_HPP

#include "jmimo/capacity.hpp"
#include "jmimo/jacobi_poly.hpp"
#include "jmimo/quadrature.hpp"
#include "jmimo/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace jmimo
{

inline constexpr long default_mc_samples = 100000;

struct MonteCarloEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
    std::uint64_t seed = 0;
};

/// Which m_r x m_t block of G is used as the channel.
enum class BlockCorner
{
    UpperLeft,
    LowerRight
};

struct McOptions
{
    int threads = 0; // 0: hardware concurrency
    BlockCorner corner = BlockCorner::UpperLeft;
};

namespace detail
{
inline constexpr double degenerate_pivot = 1e-300;

// Phase-corrected QR of an m x k complex Gaussian matrix; returns the first k columns of Q.
template <class Generator>
Eigen::MatrixXcd haar_columns(int m, int k, Generator &gen)
{
    for (;;)
    {
        Eigen::MatrixXcd z(m, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < m; ++i)
                z(i, j) = complex_standard_normal(gen);

        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
        const auto &packed = qr.matrixQR();
        Eigen::VectorXcd phase(k);
        bool degenerate = false;
        for (int j = 0; j < k; ++j)
        {
            const std::complex<double> rjj = packed(j, j);
            const double modulus = std::abs(rjj);
            if (modulus < degenerate_pivot)
            {
                degenerate = true;
                break;
            }
            phase(j) = rjj / modulus;
        }
        if (degenerate)
            continue;

        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, k);
        return q * phase.asDiagonal();
    }
}

struct Moments
{
    long count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double value)
    {
        ++count;
        const double delta = value - mean;
        mean += delta / count;
        m2 += delta * (value - mean);
    }

    void merge(const Moments &other)
    {
        if (other.count == 0)
            return;
        if (count == 0)
        {
            *this = other;
            return;
        }
        const long total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * other.count / total;
        m2 += other.m2 + delta * delta * (static_cast<double>(count) * other.count / total);
        count = total;
    }
};

inline constexpr long mc_block_size = 512;

inline int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(block, begin, end) for every block of [0, n); blocks are claimed dynamically.
template <class Body>
void for_each_block(long n, int threads, Body &&body)
{
    const long n_blocks = (n + mc_block_size - 1) / mc_block_size;
    const int workers = static_cast<int>(std::min<long>(resolve_threads(threads), std::max<long>(n_blocks, 1)));
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&]
    {
        try
        {
            for (long block = next++; block < n_blocks && !failed; block = next++)
                body(block, block * mc_block_size, std::min(n, (block + 1) * mc_block_size));
        }
        catch (...)
        {
            if (!failed.exchange(true))
                failure = std::current_exception();
        }
    };
    if (workers <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
}
} // namespace detail

/// Haar-distributed m x m unitary: QR of a complex Gaussian matrix with the phases of diag(R)
/// moved into Q.
template <class Generator>
Eigen::MatrixXcd sample_haar_unitary(int m, Generator &gen)
{
    if (m < 1)
        throw std::invalid_argument("sample_haar_unitary: m must be >= 1");
    return detail::haar_columns(m, m, gen);
}

/// First k columns of a Haar unitary; same law as slicing sample_haar_unitary(m).
template <class Generator>
Eigen::MatrixXcd sample_haar_columns(int m, int k, Generator &gen)
{
    if (m < 1 || k < 1 || k > m)
        throw std::invalid_argument("sample_haar_columns: require 1 <= k <= m");
    return detail::haar_columns(m, k, gen);
}

/// max |G^H G - I|
inline double unitarity_residual(const Eigen::MatrixXcd &g)
{
    const Eigen::MatrixXcd gram = g.adjoint() * g;
    return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

/// Channel block H (m_r x m_t) for sample `index`.
inline Eigen::MatrixXcd sample_channel(const ChannelConfig &config, std::uint64_t seed,
                                       std::uint64_t index, BlockCorner corner = BlockCorner::UpperLeft)
{
    auto gen = SplitMix64::substream(seed, index);
    const int m = config.m(), mt = config.m_t(), mr = config.m_r();
    if (corner == BlockCorner::UpperLeft)
        return sample_haar_columns(m, mt, gen).topRows(mr);
    return sample_haar_unitary(m, gen).bottomRightCorner(mr, mt);
}

/// Eigenvalues of H^H H restricted to its r = min(m_t, m_r) possibly-nonzero ones
/// (the spectrum of the smaller Gram matrix), ascending.
inline Eigen::VectorXd channel_eigenvalues(const Eigen::MatrixXcd &h)
{
    const Eigen::MatrixXcd gram = h.cols() <= h.rows() ? Eigen::MatrixXcd(h.adjoint() * h)
                                                       : Eigen::MatrixXcd(h * h.adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("channel_eigenvalues: Hermitian eigen-solver failed");
    return solver.eigenvalues();
}

/// Per-sample value log2 det(I + rho H^H H) from the Gram eigenvalues.
inline double log2_det_gain(const Eigen::VectorXd &eigenvalues, double rho)
{
    double sum = 0.0;
    for (double lambda : eigenvalues)
    {
        const double term = 1.0 + rho * lambda;
        if (!(term > 0.0))
            throw numerical_error("log2_det_gain: I + rho H^H H is not positive definite");
        sum += std::log1p(rho * lambda);
    }
    return sum / std::numbers::ln2;
}

/// One estimate per SNR, all from the same channel samples.
inline std::vector<MonteCarloEstimate> mc_capacity_grid(const ChannelConfig &config, std::span<const double> rhos,
                                                        long n_samples, std::uint64_t seed,
                                                        const McOptions &options = {})
{
    if (n_samples < 1)
        throw std::invalid_argument("mc_capacity: n_samples must be >= 1");
    for (double rho : rhos)
        if (!std::isfinite(rho) || rho < 0.0)
            throw std::invalid_argument("mc_capacity: rho must be finite and >= 0");

    const std::size_t n_rho = rhos.size();
    const long n_blocks = (n_samples + detail::mc_block_size - 1) / detail::mc_block_size;
    std::vector<detail::Moments> partial(static_cast<std::size_t>(n_blocks) * n_rho);

    detail::for_each_block(n_samples, options.threads, [&](long block, long begin, long end)
    {
        detail::Moments *moments = partial.data() + block * n_rho;
        for (long i = begin; i < end; ++i)
        {
            const Eigen::VectorXd lambda =
                channel_eigenvalues(sample_channel(config, seed, static_cast<std::uint64_t>(i), options.corner));
            for (std::size_t j = 0; j < n_rho; ++j)
                moments[j].add(log2_det_gain(lambda, rhos[j]));
        }
    });

    std::vector<MonteCarloEstimate> out(n_rho);
    for (std::size_t j = 0; j < n_rho; ++j)
    {
        detail::Moments total;
        for (long block = 0; block < n_blocks; ++block)
            total.merge(partial[block * n_rho + j]);
        out[j].mean = total.mean;
        out[j].n_samples = total.count;
        out[j].seed = seed;
        out[j].std_error = total.count > 1
                               ? std::sqrt(total.m2 / (total.count - 1)) / std::sqrt(static_cast<double>(total.count))
                               : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

inline MonteCarloEstimate mc_capacity(const ChannelConfig &config, Snr snr, long n_samples, std::uint64_t seed,
                                      const McOptions &options = {})
{
    const double rho = snr.rho;
    return mc_capacity_grid(config, std::span<const double>(&rho, 1), n_samples, seed, options).front();
}

/// Marginal density of one eigenvalue lambda in [0,1] of H^H H (among its r nonzero ones),
/// up to the normalization returned by jue_density_normalization().
inline double jue_density_unnormalized(const JacobiParams &params, double lambda)
{
    const double x = 1.0 - 2.0 * lambda;
    const double weight = std::pow(1.0 - x, params.a) * std::pow(1.0 + x, params.b);
    // dx = -2 dlambda; the kernel integrates to r under the weight.
    return 2.0 * weight * cd_kernel_closed(params, std::clamp(x, -1.0, 1.0)) / params.r;
}

/// Integral of jue_density_unnormalized over [0,1] (exact up to roundoff; should be 1).
inline double jue_density_normalization(const JacobiParams &params)
{
    const int degree = params.a + params.b + 2 * params.r;
    const QuadratureRule &legendre = *cached_rule(0, 0, std::max(8, degree / 2 + 2));
    return 0.5 * integrate(legendre, [&](double t) { return jue_density_unnormalized(params, 0.5 * (t + 1.0)); });
}

struct DensityCheck
{
    std::vector<double> bin_edges;  // n_bins + 1
    std::vector<long> counts;
    std::vector<double> empirical;  // counts / (total * width)
    std::vector<double> analytic;   // bin-averaged normalized density
    std::vector<double> z_scores;   // (count - N p) / sqrt(N p (1 - p))
    double max_abs_deviation = 0.0; // density units
    double max_abs_z = 0.0;
    double normalization = 0.0;     // integral of the unnormalized density
    long n_eigenvalues = 0;
    int empty_bins = 0;
};

/**
 * Histogram of the pooled nonzero eigenvalues of H^H H against the analytic one-eigenvalue
 * density (normalized by its numerically computed integral). Requires m_t + m_r <= m.
 */
inline DensityCheck eigenvalue_density_check(const ChannelConfig &config, long n_samples, std::uint64_t seed,
                                             int n_bins, const McOptions &options = {})
{
    config.require_direct("eigenvalue_density_check");
    if (n_bins < 1)
        throw std::invalid_argument("eigenvalue_density_check: n_bins must be >= 1");
    if (n_samples < 1)
        throw std::invalid_argument("eigenvalue_density_check: n_samples must be >= 1");

    const JacobiParams params = config.jacobi_params();
    const long n_blocks = (n_samples + detail::mc_block_size - 1) / detail::mc_block_size;
    std::vector<long> block_counts(static_cast<std::size_t>(n_blocks) * n_bins, 0);

    detail::for_each_block(n_samples, options.threads, [&](long block, long begin, long end)
    {
        long *counts = block_counts.data() + block * n_bins;
        for (long i = begin; i < end; ++i)
        {
            const Eigen::VectorXd lambda =
                channel_eigenvalues(sample_channel(config, seed, static_cast<std::uint64_t>(i), options.corner));
            for (double value : lambda)
            {
                const int bin = std::clamp(static_cast<int>(value * n_bins), 0, n_bins - 1);
                ++counts[bin];
            }
        }
    });

    DensityCheck out;
    out.normalization = jue_density_normalization(params);
    out.counts.assign(n_bins, 0);
    for (long block = 0; block < n_blocks; ++block)
        for (int k = 0; k < n_bins; ++k)
            out.counts[k] += block_counts[block * n_bins + k];
    for (long c : out.counts)
        out.n_eigenvalues += c;

    const QuadratureRule &legendre = *cached_rule(0, 0, 32);
    const double width = 1.0 / n_bins;
    const double total = static_cast<double>(out.n_eigenvalues);
    for (int k = 0; k <= n_bins; ++k)
        out.bin_edges.push_back(k * width);
    for (int k = 0; k < n_bins; ++k)
    {
        const double lo = out.bin_edges[k];
        const double probability =
            0.5 * width * integrate(legendre, [&](double t) { return jue_density_unnormalized(params, lo + 0.5 * width * (t + 1.0)); }) /
            out.normalization;
        const double empirical = out.counts[k] / (total * width);
        const double analytic = probability / width;
        const double sigma = std::sqrt(total * probability * (1.0 - probability));
        const double z = sigma > 0.0 ? (out.counts[k] - total * probability) / sigma : 0.0;
        out.empirical.push_back(empirical);
        out.analytic.push_back(analytic);
        out.z_scores.push_back(z);
        out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(empirical - analytic));
        out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
        if (out.counts[k] == 0)
            ++out.empty_bins;
    }
    return out;
}

} // namespace jmimo

#endif
