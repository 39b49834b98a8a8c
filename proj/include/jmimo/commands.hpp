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
 * @file commands.hpp
 * @brief The sweep / bench / validate / density commands behind the jmimo CLI.
 *
 * Every command writes headered CSV (comma separated, '.' decimal point, LF line ends)
 * to a std::ostream. Numbers are printed with 12 significant digits via std::to_chars,
 * so the output does not depend on the locale.
 */

#ifndef JMIMO_COMMANDS_HPP
#define JMIMO_COMMANDS_HPP

#include "jmimo/capacity.hpp"
#include "jmimo/haar_mc.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jmimo::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_argument_error = 2,
    exit_validation_failure = 3,
    exit_io_error = 4,
    exit_numerical_error = 5
};

class argument_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class validation_failure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using ModePair = std::pair<int, int>; // (m_t, m_r)

inline std::string format_number(double value)
{
    if (value == 0.0)
        return "0";
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 12);
    return std::string(buffer, result.ptr);
}

namespace detail
{
inline std::vector<std::string_view> split(std::string_view text, char separator)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;)
    {
        const std::size_t pos = text.find(separator, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

template <class T>
T parse_value(std::string_view text, std::string_view what)
{
    T value{};
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw argument_error("invalid " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}
} // namespace detail

/// "4:4,8:8" -> {(4,4), (8,8)}; each item is m_t:m_r.
inline std::vector<ModePair> parse_pairs(std::string_view text)
{
    std::vector<ModePair> pairs;
    for (std::string_view item : detail::split(text, ','))
    {
        const auto fields = detail::split(item, ':');
        if (fields.size() != 2)
            throw argument_error("invalid pair '" + std::string(item) + "' (expected m_t:m_r)");
        pairs.emplace_back(detail::parse_value<int>(fields[0], "m_t"), detail::parse_value<int>(fields[1], "m_r"));
    }
    return pairs;
}

/// "start:stop:step" (inclusive) or a single value, in dB.
inline std::vector<double> parse_snr_grid(std::string_view text)
{
    const auto fields = detail::split(text, ':');
    if (fields.size() == 1)
        return {detail::parse_value<double>(fields[0], "SNR")};
    if (fields.size() != 3)
        throw argument_error("invalid SNR grid '" + std::string(text) + "' (expected start:stop:step or a value)");
    const double start = detail::parse_value<double>(fields[0], "SNR start");
    const double stop = detail::parse_value<double>(fields[1], "SNR stop");
    const double step = detail::parse_value<double>(fields[2], "SNR step");
    if (!(step > 0.0) || !(start <= stop) || !std::isfinite(start) || !std::isfinite(stop))
        throw argument_error("invalid SNR grid '" + std::string(text) + "' (need start <= stop and step > 0)");
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (long i = 0; i < count; ++i)
        grid.push_back(start + i * step);
    return grid;
}

inline std::vector<Method> parse_methods(std::string_view text)
{
    std::vector<Method> methods;
    for (std::string_view item : detail::split(text, ','))
    {
        try
        {
            methods.push_back(parse_method(item));
        }
        catch (const std::invalid_argument &e)
        {
            throw argument_error(e.what());
        }
    }
    return methods;
}

inline ChannelConfig make_config(int m, const ModePair &pair)
{
    try
    {
        return ChannelConfig(m, pair.first, pair.second);
    }
    catch (const std::invalid_argument &)
    {
        throw argument_error("invalid pair " + std::to_string(pair.first) + ":" + std::to_string(pair.second) +
                             " for m=" + std::to_string(m));
    }
}

// ---------------------------------------------------------------------------------------
// sweep

struct SweepSpec
{
    int m = 32;
    std::vector<ModePair> pairs;
    std::vector<double> snr_db;
    std::vector<Method> methods{Method::SumForm, Method::CdForm};
    long mc_samples = default_mc_samples;
    std::uint64_t seed = 1;
    int nodes = default_quadrature_nodes;
};

inline void validate(const SweepSpec &spec)
{
    if (spec.pairs.empty())
        throw argument_error("sweep: at least one pair is required");
    if (spec.snr_db.empty())
        throw argument_error("sweep: empty SNR grid");
    if (spec.methods.empty())
        throw argument_error("sweep: at least one method is required");
    if (spec.nodes < 1)
        throw argument_error("sweep: --nodes must be >= 1");
    if (spec.mc_samples < 2)
        throw argument_error("sweep: --samples must be >= 2");
    for (const auto &pair : spec.pairs)
        make_config(spec.m, pair);
}

/// Columns: m, m_t, m_r, snr_db, then one per method (mc adds mc_stderr); pair-major rows.
inline void run_sweep(const SweepSpec &spec, std::ostream &out)
{
    validate(spec);
    std::string text = "m,m_t,m_r,snr_db";
    for (Method method : spec.methods)
    {
        text += ',';
        text += method_name(method);
        if (method == Method::MonteCarlo)
            text += ",mc_stderr";
    }
    text += '\n';

    std::vector<double> rhos;
    for (double db : spec.snr_db)
        rhos.push_back(Snr::from_db(db).rho);

    for (const auto &pair : spec.pairs)
    {
        const ChannelConfig config = make_config(spec.m, pair);
        std::vector<std::vector<std::string>> cells(spec.snr_db.size());
        for (Method method : spec.methods)
        {
            if (method == Method::MonteCarlo)
            {
                const auto estimates = mc_capacity_grid(config, rhos, spec.mc_samples, spec.seed);
                for (std::size_t i = 0; i < rhos.size(); ++i)
                {
                    cells[i].push_back(format_number(estimates[i].mean));
                    cells[i].push_back(format_number(estimates[i].std_error));
                }
                continue;
            }
            for (std::size_t i = 0; i < rhos.size(); ++i)
                cells[i].push_back(format_number(analytic_capacity(method, config, Snr(rhos[i]), spec.nodes)));
        }
        for (std::size_t i = 0; i < rhos.size(); ++i)
        {
            text += std::to_string(spec.m) + ',' + std::to_string(config.m_t()) + ',' + std::to_string(config.m_r()) +
                    ',' + format_number(spec.snr_db[i]);
            for (const auto &cell : cells[i])
                text += ',' + cell;
            text += '\n';
        }
    }
    out << text;
    if (!out)
        throw io_error("sweep: failed writing output");
}

// ---------------------------------------------------------------------------------------
// bench

struct BenchmarkRecord
{
    ChannelConfig config;
    Method method;               // SumForm or CdForm
    double wall_time_per_eval;   // seconds
    long n_evals;
    double result_checksum;      // mean capacity over the grid
};

struct BenchmarkComparison
{
    BenchmarkRecord sum;
    BenchmarkRecord cd;
    double speedup; // sum time / cd time
};

inline constexpr double checksum_tolerance = 1e-9;

namespace detail
{
template <class Form>
BenchmarkRecord time_form(const ChannelConfig &config, Method method, const std::vector<double> &rhos, int reps,
                          int nodes, Form &&form)
{
    double checksum = 0.0;
    double sink = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (int rep = 0; rep < reps; ++rep)
    {
        double grid_sum = 0.0;
        for (double rho : rhos)
            grid_sum += form(config, Snr(rho), nodes);
        if (rep == 0)
            checksum = grid_sum / static_cast<double>(rhos.size());
        sink += grid_sum;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const long n_evals = static_cast<long>(reps) * static_cast<long>(rhos.size());
    if (!std::isfinite(sink))
        throw numerical_error("bench: non-finite capacity");
    return {config, method, elapsed / static_cast<double>(n_evals), n_evals, checksum};
}
} // namespace detail

/// Times the sum and closed forms on identical grids with warm quadrature rules. Throws
/// validation_failure if the two checksums disagree beyond 1e-9 relative.
inline BenchmarkComparison bench_config(const ChannelConfig &config, const std::vector<double> &snr_db, int reps,
                                        int nodes = default_quadrature_nodes)
{
    if (!config.is_direct())
        throw argument_error("bench: requires m_t + m_r <= m");
    if (reps < 1 || snr_db.empty())
        throw argument_error("bench: need reps >= 1 and a nonempty SNR grid");
    std::vector<double> rhos;
    for (double db : snr_db)
        rhos.push_back(Snr::from_db(db).rho);
    for (double rho : rhos) // rule builds excluded from timing
        capacity_cd_form(config, Snr(rho), nodes);

    auto sum_form = [](const ChannelConfig &c, Snr s, int n) { return capacity_sum_form(c, s, n); };
    auto cd_form = [](const ChannelConfig &c, Snr s, int n) { return capacity_cd_form(c, s, n); };
    BenchmarkComparison cmp{detail::time_form(config, Method::SumForm, rhos, reps, nodes, sum_form),
                            detail::time_form(config, Method::CdForm, rhos, reps, nodes, cd_form), 0.0};
    cmp.speedup = cmp.sum.wall_time_per_eval / cmp.cd.wall_time_per_eval;

    const double a = cmp.sum.result_checksum, b = cmp.cd.result_checksum;
    if (std::abs(a - b) > checksum_tolerance * std::max(std::abs(a), std::abs(b)))
        throw validation_failure("bench: checksum mismatch for m=" + std::to_string(config.m()) +
                                 ", m_t=" + std::to_string(config.m_t()) + ", m_r=" + std::to_string(config.m_r()) +
                                 " (sum " + format_number(a) + " vs cd " + format_number(b) + ")");
    return cmp;
}

inline void write_bench(const std::vector<BenchmarkComparison> &rows, std::ostream &out)
{
    std::string text = "m,m_t,m_r,r,method,n_evals,wall_time_per_eval_s,result_checksum,speedup\n";
    for (const auto &row : rows)
        for (const BenchmarkRecord *record : {&row.sum, &row.cd})
        {
            const ChannelConfig &c = record->config;
            text += std::to_string(c.m()) + ',' + std::to_string(c.m_t()) + ',' + std::to_string(c.m_r()) + ',' +
                    std::to_string(c.r()) + ',' + std::string(method_name(record->method)) + ',' +
                    std::to_string(record->n_evals) + ',' + format_number(record->wall_time_per_eval) + ',' +
                    format_number(record->result_checksum) + ',' + format_number(row.speedup) + '\n';
        }
    out << text;
    if (!out)
        throw io_error("bench: failed writing output");
}

// ---------------------------------------------------------------------------------------
// validate

inline constexpr double validation_z_limit = 5.0;

struct ValidationRow
{
    ChannelConfig config;
    double snr_db;
    double analytic;
    MonteCarloEstimate mc;
    double z;
};

struct ValidationReport
{
    std::vector<ValidationRow> rows;
    double max_abs_z = 0.0;
    bool passed() const { return max_abs_z <= validation_z_limit; }
};

/// z = (analytic - mean) / std_error. A zero standard error is accepted only when the
/// two values agree to 1e-10; otherwise the sampling is reported as nonconvergent.
inline double z_score(double analytic, const MonteCarloEstimate &mc)
{
    // Deterministic channels leave only rounding noise in the estimate.
    const double diff = analytic - mc.mean;
    if (std::abs(diff) <= 1e-10 * std::max(1.0, std::abs(analytic)))
        return 0.0;
    if (mc.std_error > 0.0)
        return diff / mc.std_error;
    throw numerical_error("validate: zero standard error with disagreement " + format_number(diff));
}

inline ValidationReport run_validate(const std::vector<ChannelConfig> &configs, const std::vector<double> &snr_db,
                                     long samples, std::uint64_t seed, int nodes = default_quadrature_nodes,
                                     const McOptions &options = {})
{
    if (samples < 2)
        throw argument_error("validate: --samples must be >= 2");
    std::vector<double> rhos;
    for (double db : snr_db)
        rhos.push_back(Snr::from_db(db).rho);

    ValidationReport report;
    for (const ChannelConfig &config : configs)
    {
        const auto estimates = mc_capacity_grid(config, rhos, samples, seed, options);
        for (std::size_t i = 0; i < rhos.size(); ++i)
        {
            const double analytic = capacity(config, Snr(rhos[i]), nodes);
            const double z = z_score(analytic, estimates[i]);
            report.rows.push_back({config, snr_db[i], analytic, estimates[i], z});
            report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
        }
    }
    return report;
}

inline void write_validation(const ValidationReport &report, std::ostream &out)
{
    std::string text = "m,m_t,m_r,snr_db,analytic,mc_mean,mc_stderr,z\n";
    for (const auto &row : report.rows)
        text += std::to_string(row.config.m()) + ',' + std::to_string(row.config.m_t()) + ',' +
                std::to_string(row.config.m_r()) + ',' + format_number(row.snr_db) + ',' +
                format_number(row.analytic) + ',' + format_number(row.mc.mean) + ',' +
                format_number(row.mc.std_error) + ',' + format_number(row.z) + '\n';
    out << text;
    if (!out)
        throw io_error("validate: failed writing output");
}

// ---------------------------------------------------------------------------------------
// density

inline void write_density(const DensityCheck &check, std::ostream &out)
{
    std::string text = "bin_lo,bin_hi,count,empirical,analytic,z\n";
    for (std::size_t k = 0; k < check.counts.size(); ++k)
        text += format_number(check.bin_edges[k]) + ',' + format_number(check.bin_edges[k + 1]) + ',' +
                std::to_string(check.counts[k]) + ',' + format_number(check.empirical[k]) + ',' +
                format_number(check.analytic[k]) + ',' + format_number(check.z_scores[k]) + '\n';
    out << text;
    if (!out)
        throw io_error("density: failed writing output");
}

} // namespace jmimo::cli

#endif
