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

#include "jmimo/commands.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace jmimo;
using namespace jmimo::cli;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace
{
std::vector<std::vector<std::string>> read_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string sweep_text(const SweepSpec &spec)
{
    std::ostringstream out;
    run_sweep(spec, out);
    return out.str();
}
} // namespace

TEST_CASE("argument parsing")
{
    CHECK(parse_pairs("4:4,8:2") == std::vector<ModePair>{{4, 4}, {8, 2}});
    CHECK_THROWS_AS(parse_pairs("4-4"), argument_error);
    CHECK_THROWS_AS(parse_pairs("4:x"), argument_error);
    CHECK_THROWS_AS(parse_pairs(""), argument_error);

    const auto grid = parse_snr_grid("0:30:1");
    REQUIRE(grid.size() == 31);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 30.0);
    CHECK(parse_snr_grid("0:30:15") == std::vector<double>{0.0, 15.0, 30.0});
    CHECK(parse_snr_grid("0:1:0.1").size() == 11);
    CHECK(parse_snr_grid("-3.5") == std::vector<double>{-3.5});
    CHECK_THROWS_AS(parse_snr_grid("5:1:1"), argument_error);
    CHECK_THROWS_AS(parse_snr_grid("0:1:0"), argument_error);
    CHECK_THROWS_AS(parse_snr_grid("0:1"), argument_error);

    CHECK(parse_methods("sum,cd,lb,lowsnr,mc").size() == 5);
    CHECK_THROWS_AS(parse_methods("sum,foo"), argument_error);

    CHECK(format_number(8.0) == "8");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(13.83772647454919) == "13.8377264745");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("sweep - two forms over the 0-30 dB grid")
{
    SweepSpec spec;
    spec.m = 32;
    spec.pairs = {{4, 4}, {8, 8}};
    spec.snr_db = parse_snr_grid("0:30:1");
    spec.methods = {Method::SumForm, Method::CdForm};
    const auto rows = read_csv(sweep_text(spec));
    REQUIRE(rows.size() == 63);
    CHECK(rows[0] == std::vector<std::string>{"m", "m_t", "m_r", "snr_db", "sum", "cd"});
    CHECK(rows[1][1] == "4");
    CHECK(rows[32][1] == "8");
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK_THAT(std::stod(rows[i][5]), WithinRel(std::stod(rows[i][4]), 1e-9));
}

TEST_CASE("sweep - full unitary channel and all analytic methods")
{
    SweepSpec spec;
    spec.m = 4;
    spec.pairs = {{4, 4}};
    spec.snr_db = {10.0};
    spec.methods = {Method::CdForm};
    CHECK(sweep_text(spec) == "m,m_t,m_r,snr_db,cd\n4,4,4,10,13.8377264745\n");

    spec.methods = {Method::LowSnr, Method::SumForm, Method::LowerBound};
    const auto rows = read_csv(sweep_text(spec));
    CHECK(rows[0] == std::vector<std::string>{"m", "m_t", "m_r", "snr_db", "lowsnr", "sum", "lb"});
    CHECK(rows[1][5] == "13.8377264745");
    CHECK(rows[1][6] == "13.8377264745");
}

TEST_CASE("sweep - more unused modes give lower capacity")
{
    SweepSpec spec;
    spec.pairs = {{2, 2}, {4, 4}, {6, 6}};
    spec.snr_db = parse_snr_grid("0:30:1");
    spec.methods = {Method::CdForm};
    spec.m = 32;
    const auto wide = read_csv(sweep_text(spec));
    spec.m = 16;
    const auto narrow = read_csv(sweep_text(spec));
    REQUIRE(wide.size() == narrow.size());
    for (std::size_t i = 1; i < wide.size(); ++i)
        CHECK(std::stod(wide[i][4]) < std::stod(narrow[i][4]));
}

TEST_CASE("sweep - Monte Carlo columns are reproducible")
{
    SweepSpec spec;
    spec.m = 6;
    spec.pairs = {{2, 3}, {5, 4}};
    spec.snr_db = {0.0, 20.0};
    spec.methods = {Method::CdForm, Method::MonteCarlo};
    spec.mc_samples = 3000;
    spec.seed = 77;
    const std::string first = sweep_text(spec);
    CHECK(first == sweep_text(spec));
    const auto rows = read_csv(first);
    CHECK(rows[0] == std::vector<std::string>{"m", "m_t", "m_r", "snr_db", "cd", "mc", "mc_stderr"});
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::abs(std::stod(rows[i][4]) - std::stod(rows[i][5])) < 5.0 * std::stod(rows[i][6]));
}

TEST_CASE("sweep - invalid specs")
{
    SweepSpec spec;
    spec.m = 8;
    spec.pairs = {{2, 2}, {9, 1}};
    spec.snr_db = {0.0};
    CHECK_THROWS_WITH(sweep_text(spec), ContainsSubstring("invalid pair 9:1 for m=8"));
    CHECK_THROWS_AS(sweep_text(spec), argument_error);
    spec.pairs.clear();
    CHECK_THROWS_AS(sweep_text(spec), argument_error);
    spec.pairs = {{1, 1}};
    spec.nodes = 0;
    CHECK_THROWS_AS(sweep_text(spec), argument_error);
}

TEST_CASE("bench - checksums agree and the closed form is faster at large r")
{
    const std::vector<double> grid = parse_snr_grid("0:30:5");

    const BenchmarkComparison trivial = bench_config(ChannelConfig(8, 1, 1), grid, 50);
    CHECK_THAT(trivial.cd.result_checksum, WithinRel(trivial.sum.result_checksum, 1e-9));
    CHECK(trivial.speedup > 0.25);
    CHECK(trivial.speedup < 4.0);

    const BenchmarkComparison large = bench_config(ChannelConfig(32, 16, 16), grid, 20);
    CHECK_THAT(large.cd.result_checksum, WithinRel(large.sum.result_checksum, 1e-9));
    CHECK(large.sum.n_evals == 20 * static_cast<long>(grid.size()));
    CHECK(large.cd.wall_time_per_eval < large.sum.wall_time_per_eval);

    std::ostringstream out;
    write_bench({trivial, large}, out);
    const auto rows = read_csv(out.str());
    REQUIRE(rows.size() == 5);
    CHECK(rows[0][4] == "method");
    CHECK(rows[3][4] == "sum");
    CHECK(rows[4][4] == "cd");

    CHECK_THROWS_AS(bench_config(ChannelConfig(8, 5, 5), grid, 1), argument_error);
}

TEST_CASE("validate - z-scores")
{
    const auto deterministic = run_validate({ChannelConfig(4, 4, 4)}, {0.0, 30.0}, 500, 1);
    for (const auto &row : deterministic.rows)
    {
        CHECK(row.z == 0.0);
        CHECK(std::abs(row.analytic - row.mc.mean) < 1e-10);
    }
    CHECK(deterministic.passed());

    const auto reflected = run_validate({ChannelConfig(3, 2, 2)}, {10.0}, 20000, 4);
    CHECK(reflected.passed());

    MonteCarloEstimate stuck{1.0, 0.0, 100, 0};
    CHECK_THROWS_AS(z_score(2.0, stuck), numerical_error);
    CHECK(z_score(1.0, stuck) == 0.0);

    std::ostringstream out;
    write_validation(reflected, out);
    const auto rows = read_csv(out.str());
    CHECK(rows[0] == std::vector<std::string>{"m", "m_t", "m_r", "snr_db", "analytic", "mc_mean", "mc_stderr", "z"});
    CHECK(rows.size() == 2);
}

TEST_CASE("density - CSV layout")
{
    const DensityCheck check = eigenvalue_density_check(ChannelConfig(2, 1, 1), 1000, 1, 4);
    std::ostringstream out;
    write_density(check, out);
    const auto rows = read_csv(out.str());
    REQUIRE(rows.size() == 5);
    CHECK(rows[1][0] == "0");
    CHECK(rows[1][1] == "0.25");
    CHECK(rows[4][1] == "1");
}
