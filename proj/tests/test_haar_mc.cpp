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

#include <catch2/catch_amalgamated.hpp>

#include "jmimo/capacity.hpp"
#include "jmimo/haar_mc.hpp"

#include <cmath>

using namespace jmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
// Running mean and standard error of a scalar statistic.
struct Stat
{
    long n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    void add(double v)
    {
        ++n;
        sum += v;
        sum_sq += v * v;
    }
    double mean() const { return sum / n; }
    double std_error() const { return std::sqrt((sum_sq / n - mean() * mean()) * n / (n - 1) / n); }
};
} // namespace

TEST_CASE("sample_haar_unitary - unitarity")
{
    SplitMix64 gen(7);
    const Eigen::MatrixXcd one = sample_haar_unitary(1, gen);
    CHECK_THAT(std::abs(one(0, 0)), WithinAbs(1.0, 1e-12));

    for (int m : {2, 4, 8, 16, 32})
        for (int i = 0; i < 200; ++i)
        {
            const Eigen::MatrixXcd g = sample_haar_unitary(m, gen);
            REQUIRE(g.rows() == m);
            CHECK(unitarity_residual(g) < 1e-12);
        }

    const Eigen::MatrixXcd cols = sample_haar_columns(10, 3, gen);
    CHECK(cols.rows() == 10);
    CHECK(cols.cols() == 3);
    CHECK(unitarity_residual(cols) < 1e-12);

    CHECK_THROWS_AS(sample_haar_unitary(0, gen), std::invalid_argument);
    CHECK_THROWS_AS(sample_haar_columns(4, 5, gen), std::invalid_argument);
}

TEST_CASE("sample_haar_unitary - first moments of the Haar measure")
{
    // E|G_11|^2 = 1/m; E[G_11] = 0, which fails without the diag(R) phase correction.
    const int m = 8;
    Stat modulus_sq, real_part, diag_real;
    for (std::uint64_t i = 0; i < 100000; ++i)
    {
        auto gen = SplitMix64::substream(99, i);
        const Eigen::MatrixXcd g = sample_haar_unitary(m, gen);
        modulus_sq.add(std::norm(g(0, 0)));
        real_part.add(g(0, 0).real());
        diag_real.add(g(m - 1, m - 1).real());
    }
    INFO("E|G11|^2 = " << modulus_sq.mean() << " +- " << modulus_sq.std_error());
    CHECK(std::abs(modulus_sq.mean() - 1.0 / m) < 3.0 * modulus_sq.std_error());
    CHECK(std::abs(real_part.mean()) < 3.0 * real_part.std_error());
    CHECK(std::abs(diag_real.mean()) < 3.0 * diag_real.std_error());
}

TEST_CASE("channel eigenvalues lie in [0, 1]")
{
    for (auto [m, mt, mr] : {std::tuple{8, 3, 2}, std::tuple{8, 6, 7}, std::tuple{32, 4, 8}, std::tuple{5, 5, 5}})
    {
        const ChannelConfig config(m, mt, mr);
        for (std::uint64_t i = 0; i < 500; ++i)
            for (BlockCorner corner : {BlockCorner::UpperLeft, BlockCorner::LowerRight})
            {
                const Eigen::VectorXd lambda = channel_eigenvalues(sample_channel(config, 3, i, corner));
                CHECK(lambda.size() == config.r());
                CHECK(lambda.minCoeff() >= -1e-12);
                CHECK(lambda.maxCoeff() <= 1.0 + 1e-12);
            }
    }
}

TEST_CASE("mc_capacity - deterministic cases")
{
    const MonteCarloEstimate full = mc_capacity(ChannelConfig(4, 4, 4), Snr(3.0), 1000, 5);
    CHECK_THAT(full.mean, WithinAbs(8.0, 1e-10));
    CHECK(full.std_error < 1e-10);
    CHECK(full.n_samples == 1000);
    CHECK(full.seed == 5);

    const MonteCarloEstimate zero = mc_capacity(ChannelConfig(8, 2, 3), Snr(0.0), 1000, 5);
    CHECK(zero.mean == 0.0);
    CHECK(zero.std_error == 0.0);

    CHECK_THROWS_AS(mc_capacity(ChannelConfig(8, 2, 3), Snr(1.0), 0, 5), std::invalid_argument);
}

TEST_CASE("mc_capacity - agrees with the closed form")
{
    const ChannelConfig config(32, 4, 4);
    const MonteCarloEstimate mc = mc_capacity(config, Snr(100.0), 100000, 17);
    const double analytic = capacity_cd_form(config, Snr(100.0));
    INFO("analytic " << analytic << " mc " << mc.mean << " +- " << mc.std_error);
    CHECK(std::abs(mc.mean - analytic) < 3.0 * mc.std_error);
}

TEST_CASE("mc_capacity - reproducible and independent of worker count")
{
    const ChannelConfig config(12, 3, 4);
    const std::vector<double> rhos{0.5, 20.0};
    const auto serial = mc_capacity_grid(config, rhos, 5000, 42, {.threads = 1});
    const auto parallel = mc_capacity_grid(config, rhos, 5000, 42, {.threads = 4});
    const auto again = mc_capacity_grid(config, rhos, 5000, 42, {.threads = 3});
    for (std::size_t j = 0; j < rhos.size(); ++j)
    {
        CHECK(serial[j].mean == parallel[j].mean);
        CHECK(serial[j].std_error == parallel[j].std_error);
        CHECK(serial[j].mean == again[j].mean);
    }

    const auto other = mc_capacity_grid(config, rhos, 5000, 43);
    for (std::size_t j = 0; j < rhos.size(); ++j)
    {
        CHECK(other[j].mean != serial[j].mean);
        const double combined = std::hypot(other[j].std_error, serial[j].std_error);
        CHECK(std::abs(other[j].mean - serial[j].mean) < 6.0 * combined);
    }
}

TEST_CASE("mc_capacity - upper-left and lower-right blocks agree")
{
    const ChannelConfig config(8, 2, 3);
    const auto ul = mc_capacity(config, Snr(10.0), 20000, 8, {.corner = BlockCorner::UpperLeft});
    const auto lr = mc_capacity(config, Snr(10.0), 20000, 9, {.corner = BlockCorner::LowerRight});
    CHECK(std::abs(ul.mean - lr.mean) < 3.0 * std::hypot(ul.std_error, lr.std_error));
}

TEST_CASE("jue density - normalization and closed forms")
{
    for (auto p : {JacobiParams(0, 0, 1), JacobiParams(0, 6, 1), JacobiParams(2, 5, 3), JacobiParams(4, 20, 4), JacobiParams(0, 16, 8)})
        CHECK_THAT(jue_density_normalization(p), WithinRel(1.0, 1e-12));

    for (double lambda : {0.0, 0.1, 0.5, 0.93, 1.0})
    {
        CHECK_THAT(jue_density_unnormalized(JacobiParams(0, 0, 1), lambda), WithinRel(1.0, 1e-14));
        CHECK_THAT(jue_density_unnormalized(JacobiParams(0, 6, 1), lambda), WithinAbs(7.0 * std::pow(1.0 - lambda, 6), 1e-13));
    }
}

TEST_CASE("eigenvalue_density_check - histograms match the analytic density")
{
    const DensityCheck flat = eigenvalue_density_check(ChannelConfig(2, 1, 1), 50000, 1, 10);
    CHECK(flat.n_eigenvalues == 50000);
    CHECK(flat.empty_bins == 0);
    for (double v : flat.analytic)
        CHECK_THAT(v, WithinRel(1.0, 1e-12));
    CHECK(flat.max_abs_z < 4.0);

    const DensityCheck skewed = eigenvalue_density_check(ChannelConfig(8, 1, 1), 100000, 2, 20);
    CHECK_THAT(skewed.normalization, WithinRel(1.0, 1e-12));
    // 20 bins: 3 sigma somewhere happens ~5% of the time; 4 sigma keeps the family-wise rate ~0.1%.
    CHECK(skewed.max_abs_z < 4.0);
    // Bin-averaged 7(1-l)^6 over [0, 0.05] is (1 - 0.95^7)/0.05.
    CHECK_THAT(skewed.analytic.front(), WithinRel((1.0 - std::pow(0.95, 7)) / 0.05, 1e-12));

    // r = 3: eigenvalues of one sample are correlated, so only a loose check of the shape.
    const DensityCheck multi = eigenvalue_density_check(ChannelConfig(10, 3, 3), 20000, 3, 10);
    CHECK(multi.n_eigenvalues == 60000);
    CHECK(multi.max_abs_deviation < 0.1);

    CHECK_THROWS_AS(eigenvalue_density_check(ChannelConfig(4, 3, 3), 10, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(eigenvalue_density_check(ChannelConfig(4, 1, 1), 10, 1, 0), std::invalid_argument);
}
