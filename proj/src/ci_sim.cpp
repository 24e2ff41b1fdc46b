// shadowcorr - correlated shadow fading synthesis and C/I Monte Carlo engine
// Copyright (C) 2026 The shadowcorr authors
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

#include "shadowcorr/ci_sim.hpp"
#include "shadowcorr/error.hpp"
#include "shadowcorr/shadowing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace
{
    using namespace shadowcorr;

    // Replicas per draw_static call. Part of the seed derivation: changing it
    // changes the output bits.
    constexpr std::size_t kBlockSize = 4096;

    struct Moments
    {
        std::size_t n = 0;
        double mean = 0.0;
        double m2 = 0.0;

        void add(double x) noexcept
        {
            ++n;
            const double delta = x - mean;
            mean += delta / static_cast<double>(n);
            m2 += delta * (x - mean);
        }

        void merge(const Moments &o) noexcept
        {
            if (o.n == 0)
                return;
            if (n == 0)
            {
                *this = o;
                return;
            }
            const double total = static_cast<double>(n + o.n);
            const double delta = o.mean - mean;
            mean += delta * static_cast<double>(o.n) / total;
            m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
            n += o.n;
        }
    };

    std::vector<Position> link_positions(const Scenario &s)
    {
        std::vector<Position> p;
        p.reserve(s.n_links());
        p.push_back(s.source.position);
        for (const auto &bs : s.interferers)
            p.push_back(bs.position);
        return p;
    }

    void check_point(const Scenario &s, Position point)
    {
        const auto stations = link_positions(s);
        for (std::size_t i = 0; i < stations.size(); ++i)
            if (!(distance(point, stations[i]) > 0.0))
                throw Error(ErrorCode::DegenerateGeometry,
                            i == 0 ? std::string("grid point coincides with the source station")
                                   : "grid point coincides with interferer " + std::to_string(i - 1));
    }

    // Received power without shadowing, [source, interferers...], dBm.
    std::vector<double> mean_rx(const Scenario &s, Position point)
    {
        check_point(s, point);
        std::vector<double> rx;
        rx.reserve(s.n_links());
        rx.push_back(s.source.tx_power_dbm - path_loss(s.source.pathloss, distance(point, s.source.position)));
        for (const auto &bs : s.interferers)
            rx.push_back(bs.tx_power_dbm - path_loss(bs.pathloss, distance(point, bs.position)));
        return rx;
    }

    // Interferers are summed relative to the strongest one, so a lone
    // interferer reduces to a plain dB difference and nothing overflows.
    double ci_from_rx(std::span<const double> rx, std::span<const double> shadow) noexcept
    {
        const double carrier = rx[0] - shadow[0];
        double strongest = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < rx.size(); ++i)
            strongest = std::max(strongest, rx[i] - shadow[i]);
        double relative = 0.0;
        for (std::size_t i = 1; i < rx.size(); ++i)
            relative += db_to_linear(rx[i] - shadow[i] - strongest);
        return carrier - strongest - 10.0 * std::log10(relative);
    }

    struct CellPlan
    {
        std::size_t cell = 0;
        std::uint64_t seed = 0;
        std::vector<double> rx;
        CholeskyFactor factor = CholeskyFactor::identity(1);
        std::size_t first_task = 0;
        std::size_t n_blocks = 0;
    };

    CellPlan plan_cell(const Scenario &s, Position point, std::size_t cell_index)
    {
        CellPlan plan;
        plan.cell = cell_index;
        plan.seed = split_seed(s.seed, cell_index);
        plan.rx = mean_rx(s, point);
        // Floor 0 keeps exactly singular inputs (fully correlated links) unrepaired.
        plan.factor = cholesky(repair_psd(link_correlation(s, point), 0.0).matrix);
        plan.n_blocks = (s.replicas + kBlockSize - 1) / kBlockSize;
        return plan;
    }

    Moments run_block(const Scenario &s, const CellPlan &plan, std::size_t block)
    {
        const std::size_t count = std::min(kBlockSize, s.replicas - block * kBlockSize);
        ShadowParams params;
        params.sigma_db = s.sigma_db;
        params.beta = 0.0;
        params.n_links = s.n_links();
        const Matrix draws = draw_static(params, plan.factor, split_seed(plan.seed, block), count);

        Moments m;
        std::vector<double> shadow(params.n_links);
        for (std::size_t c = 0; c < count; ++c)
        {
            for (std::size_t i = 0; i < params.n_links; ++i)
                shadow[i] = draws(i, c);
            m.add(ci_from_rx(plan.rx, shadow));
        }
        return m;
    }

    // Evaluates every block of every plan, possibly in parallel, and reduces
    // each cell's blocks in block order.
    std::vector<Moments> evaluate(const Scenario &s, std::vector<CellPlan> &plans, unsigned threads)
    {
        std::vector<std::pair<std::size_t, std::size_t>> tasks; // (plan, block)
        for (std::size_t p = 0; p < plans.size(); ++p)
        {
            plans[p].first_task = tasks.size();
            for (std::size_t b = 0; b < plans[p].n_blocks; ++b)
                tasks.emplace_back(p, b);
        }
        std::vector<Moments> block_moments(tasks.size());

        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tasks.size())));

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto worker = [&]()
        {
            for (std::size_t t = next++; t < tasks.size() && !failed; t = next++)
            {
                try
                {
                    block_moments[t] = run_block(s, plans[tasks[t].first], tasks[t].second);
                }
                catch (...)
                {
                    if (!failed.exchange(true))
                        failure = std::current_exception();
                }
            }
        };

        if (threads <= 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            pool.reserve(threads);
            for (unsigned i = 0; i < threads; ++i)
                pool.emplace_back(worker);
        }
        if (failure)
            std::rethrow_exception(failure);

        std::vector<Moments> per_plan(plans.size());
        for (std::size_t p = 0; p < plans.size(); ++p)
            for (std::size_t b = 0; b < plans[p].n_blocks; ++b)
                per_plan[p].merge(block_moments[plans[p].first_task + b]);
        return per_plan;
    }

    CellStats to_stats(Position point, const Moments &m)
    {
        CellStats c;
        c.point = point;
        c.mean_db = m.mean;
        c.std_db = m.n > 1 ? std::sqrt(std::max(0.0, m.m2) / static_cast<double>(m.n - 1)) : 0.0;
        c.replicas_used = m.n;
        return c;
    }

    BaseStation station(double x, double y)
    {
        BaseStation bs;
        bs.position = {x, y};
        return bs;
    }
}

void shadowcorr::Scenario::validate() const
{
    if (interferers.empty())
        throw Error(ErrorCode::InvalidArgument, "scenario: at least one interferer is required");
    if (!std::isfinite(sigma_db) || sigma_db < 0.0)
        throw Error(ErrorCode::InvalidArgument, "scenario: sigma_db must be a non-negative number");
    if (replicas < 2)
        throw Error(ErrorCode::InvalidArgument, "scenario: replicas must be at least 2");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "scenario: beta must lie in [0, 1]");
    auto check_station = [](const BaseStation &bs, const std::string &name)
    {
        if (!std::isfinite(bs.tx_power_dbm) || !std::isfinite(bs.position.x) || !std::isfinite(bs.position.y) ||
            !std::isfinite(bs.pathloss.a) || !std::isfinite(bs.pathloss.b))
            throw Error(ErrorCode::InvalidArgument, "scenario: " + name + " has a non-finite field");
    };
    check_station(source, "source");
    for (std::size_t i = 0; i < interferers.size(); ++i)
        check_station(interferers[i], "interferer " + std::to_string(i));
    for (const auto &p : grid)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error(ErrorCode::InvalidArgument, "scenario: non-finite grid point");
}

double shadowcorr::ci_sample(const Scenario &scenario, Position point, std::span<const double> shadow_db)
{
    if (shadow_db.size() != scenario.n_links())
        throw Error(ErrorCode::DimensionMismatch, "ci_sample: expected " + std::to_string(scenario.n_links()) +
                                                      " shadowing values, got " + std::to_string(shadow_db.size()));
    if (scenario.interferers.empty())
        throw Error(ErrorCode::InvalidArgument, "ci_sample: at least one interferer is required");
    const auto rx = mean_rx(scenario, point);
    return ci_from_rx(rx, shadow_db);
}

double shadowcorr::ci_deterministic(const Scenario &scenario, Position point)
{
    const std::vector<double> zero(scenario.n_links(), 0.0);
    return ci_sample(scenario, point, zero);
}

shadowcorr::CorrelationMatrix shadowcorr::link_correlation(const Scenario &scenario, Position point)
{
    if (!scenario.table)
    {
        check_point(scenario, point);
        return CorrelationMatrix::identity(scenario.n_links());
    }
    const auto stations = link_positions(scenario);
    return build_matrix(point, stations, *scenario.table);
}

shadowcorr::CellStats shadowcorr::run_point(const Scenario &scenario, Position point, std::size_t cell_index,
                                            unsigned threads)
{
    scenario.validate();
    std::vector<CellPlan> plans;
    plans.push_back(plan_cell(scenario, point, cell_index));
    const auto moments = evaluate(scenario, plans, threads);
    return to_stats(point, moments.front());
}

shadowcorr::CIGrid shadowcorr::run_grid(const Scenario &scenario, unsigned threads)
{
    scenario.validate();
    if (scenario.grid.empty())
        throw Error(ErrorCode::InvalidArgument, "scenario: grid is empty");

    CIGrid out;
    out.cells.resize(scenario.grid.size());
    std::vector<CellPlan> plans;
    for (std::size_t i = 0; i < scenario.grid.size(); ++i)
    {
        out.cells[i].point = scenario.grid[i];
        try
        {
            plans.push_back(plan_cell(scenario, scenario.grid[i], i));
        }
        catch (const Error &e)
        {
            out.cells[i].mean_db = std::numeric_limits<double>::quiet_NaN();
            out.cells[i].std_db = std::numeric_limits<double>::quiet_NaN();
            out.cells[i].error = std::string(to_string(e.code())) + ": " + e.what();
        }
    }

    const auto moments = evaluate(scenario, plans, threads);
    for (std::size_t p = 0; p < plans.size(); ++p)
    {
        const std::size_t cell = plans[p].cell;
        out.cells[cell] = to_stats(scenario.grid[cell], moments[p]);
    }
    return out;
}

double shadowcorr::SensitivityReport::delta_mean(std::size_t sigma_index, std::size_t cell) const
{
    return grids.at(sigma_index).cells.at(cell).mean_db - grids.front().cells.at(cell).mean_db;
}

double shadowcorr::SensitivityReport::delta_std(std::size_t sigma_index, std::size_t cell) const
{
    return grids.at(sigma_index).cells.at(cell).std_db - grids.front().cells.at(cell).std_db;
}

shadowcorr::SensitivityReport shadowcorr::sensitivity_sigma(const Scenario &scenario,
                                                            std::span<const double> sigmas_db, unsigned threads)
{
    if (sigmas_db.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "sensitivity: need at least two sigma values");
    SensitivityReport report;
    report.sigmas_db.assign(sigmas_db.begin(), sigmas_db.end());
    for (double sigma : sigmas_db)
    {
        Scenario s = scenario;
        s.sigma_db = sigma;
        report.grids.push_back(run_grid(s, threads));
    }
    return report;
}

std::vector<std::string> shadowcorr::preset_names()
{
    return {"figure2"};
}

shadowcorr::Scenario shadowcorr::preset(std::string_view name)
{
    if (name == "figure2")
    {
        Scenario s;
        s.source = station(0.0, 0.0);
        s.interferers = {station(700.0, 0.0), station(700.0, 1050.0)};
        s.sigma_db = 7.0;
        s.table = CorrelationTable::builtin(TableKind::Predicted);
        s.replicas = 100000;
        for (double y : {875.0, 525.0, 175.0})
            for (double x : {-175.0, 175.0, 525.0, 875.0})
                s.grid.push_back({x, y});
        return s;
    }

    std::string valid;
    for (const auto &n : preset_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "' (valid presets: " + valid + ")");
}
