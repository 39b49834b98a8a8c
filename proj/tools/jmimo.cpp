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

#include "jmimo/jmimo.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace
{

using namespace jmimo;
using namespace jmimo::cli;

struct CommonArgs
{
    int m = 32;
    std::string pairs;
    std::string snr_db = "0:30:1";
    long samples = default_mc_samples;
    std::uint64_t seed = 1;
    std::string out = "-";
    int nodes = default_quadrature_nodes;
};

// Opens --out; "-" is stdout.
class Output
{
public:
    explicit Output(const std::string &path)
    {
        if (path == "-")
            return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_)
            throw io_error("cannot open output file '" + path + "'");
    }

    std::ostream &stream() { return file_ ? static_cast<std::ostream &>(*file_) : std::cout; }

    void close()
    {
        if (file_)
        {
            file_->close();
            if (!*file_)
                throw io_error("failed to finish writing output file");
        }
        else
            std::cout.flush();
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<ChannelConfig> configs_from(const CommonArgs &args)
{
    std::vector<ChannelConfig> configs;
    for (const auto &pair : parse_pairs(args.pairs))
        configs.push_back(make_config(args.m, pair));
    return configs;
}

void add_common(CLI::App *cmd, CommonArgs &args, bool with_mc)
{
    cmd->add_option("--m", args.m, "Number of fiber modes/cores")->required();
    cmd->add_option("--pairs", args.pairs, "Comma-separated m_t:m_r pairs")->required();
    cmd->add_option("--snr-db", args.snr_db, "SNR grid in dB: start:stop:step or a single value")
        ->capture_default_str();
    cmd->add_option("--out", args.out, "Output CSV path, '-' for stdout")->capture_default_str();
    cmd->add_option("--nodes", args.nodes, "Gauss-Jacobi nodes per quadrature panel")->capture_default_str();
    if (with_mc)
    {
        cmd->add_option("--samples", args.samples, "Monte Carlo samples")->capture_default_str();
        cmd->add_option("--seed", args.seed, "Monte Carlo seed")->capture_default_str();
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Ergodic capacity of Jacobi (Haar-submatrix) MIMO channels"};
    app.require_subcommand(1);

    CommonArgs sweep_args;
    std::string methods = "sum,cd";
    auto *sweep = app.add_subcommand("sweep", "Capacity curves as CSV");
    add_common(sweep, sweep_args, true);
    sweep->add_option("--methods", methods, "Subset of sum,cd,lb,lowsnr,mc")->capture_default_str();

    CommonArgs bench_args;
    int reps = 20;
    auto *bench = app.add_subcommand("bench", "Time the sum form against the closed form");
    add_common(bench, bench_args, false);
    bench->add_option("--reps", reps, "Repetitions over the SNR grid")->capture_default_str();

    CommonArgs validate_args;
    validate_args.snr_db = "0:30:15";
    auto *validate_cmd = app.add_subcommand("validate", "Compare analytic capacity with Monte Carlo");
    add_common(validate_cmd, validate_args, true);

    CommonArgs density_args;
    int bins = 20;
    auto *density = app.add_subcommand("density", "Eigenvalue histogram against the analytic density");
    add_common(density, density_args, true);
    density->add_option("--bins", bins, "Histogram bins on [0,1]")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_argument_error;
    }

    try
    {
        if (*sweep)
        {
            SweepSpec spec;
            spec.m = sweep_args.m;
            spec.pairs = parse_pairs(sweep_args.pairs);
            spec.snr_db = parse_snr_grid(sweep_args.snr_db);
            spec.methods = parse_methods(methods);
            spec.mc_samples = sweep_args.samples;
            spec.seed = sweep_args.seed;
            spec.nodes = sweep_args.nodes;
            validate(spec);
            Output out(sweep_args.out);
            run_sweep(spec, out.stream());
            out.close();
        }
        else if (*bench)
        {
            const auto configs = configs_from(bench_args);
            const auto grid = parse_snr_grid(bench_args.snr_db);
            if (bench_args.nodes < 1)
                throw argument_error("--nodes must be >= 1");
            std::vector<BenchmarkComparison> rows;
            for (const auto &config : configs)
                rows.push_back(bench_config(config, grid, reps, bench_args.nodes));
            Output out(bench_args.out);
            write_bench(rows, out.stream());
            out.close();
        }
        else if (*validate_cmd)
        {
            const auto configs = configs_from(validate_args);
            const auto grid = parse_snr_grid(validate_args.snr_db);
            if (validate_args.nodes < 1)
                throw argument_error("--nodes must be >= 1");
            const auto report = run_validate(configs, grid, validate_args.samples, validate_args.seed,
                                             validate_args.nodes);
            Output out(validate_args.out);
            write_validation(report, out.stream());
            out.close();
            if (!report.passed())
            {
                std::cerr << "validate: FAILED, max |z| = " << format_number(report.max_abs_z) << " > "
                          << format_number(validation_z_limit) << '\n';
                return exit_validation_failure;
            }
            std::cerr << "validate: passed, max |z| = " << format_number(report.max_abs_z) << '\n';
        }
        else if (*density)
        {
            const auto configs = configs_from(density_args);
            if (configs.size() != 1)
                throw argument_error("density: exactly one pair is required");
            if (!configs.front().is_direct())
                throw argument_error("density: requires m_t + m_r <= m");
            if (bins < 1 || density_args.samples < 1)
                throw argument_error("density: --bins and --samples must be >= 1");
            const auto check = eigenvalue_density_check(configs.front(), density_args.samples, density_args.seed, bins);
            Output out(density_args.out);
            write_density(check, out.stream());
            out.close();
            std::cerr << "density: eigenvalues=" << check.n_eigenvalues
                      << " normalization=" << format_number(check.normalization)
                      << " max_abs_deviation=" << format_number(check.max_abs_deviation)
                      << " max_abs_z=" << format_number(check.max_abs_z) << " empty_bins=" << check.empty_bins
                      << '\n';
            if (check.empty_bins > 0)
                std::cerr << "density: some bins are empty; use fewer bins or more samples\n";
        }
    }
    catch (const argument_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_argument_error;
    }
    catch (const validation_failure &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation_failure;
    }
    catch (const io_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io_error;
    }
    catch (const numerical_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical_error;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_argument_error;
    }
    return exit_ok;
}
