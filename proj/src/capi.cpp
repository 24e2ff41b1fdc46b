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

#include "shadowcorr/shadowcorr.h"

#include "shadowcorr/ci_sim.hpp"
#include "shadowcorr/correlation.hpp"
#include "shadowcorr/error.hpp"
#include "shadowcorr/extraction.hpp"
#include "shadowcorr/io.hpp"
#include "shadowcorr/shadowing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <string>

namespace sc = shadowcorr;

struct shc_table
{
    sc::CorrelationTable value;
};

struct shc_generator
{
    sc::ShadowState state;
};

struct shc_trace
{
    sc::Trace value;
};

struct shc_extraction
{
    sc::ExtractionResult value;
};

struct shc_scenario
{
    sc::Scenario value;
};

struct shc_grid
{
    sc::CIGrid value;
};

struct shc_sensitivity
{
    sc::SensitivityReport value;
};

namespace
{
    thread_local std::string last_error;

    shc_status fail(shc_status status, std::string message)
    {
        last_error = std::move(message);
        return status;
    }

    template <class F>
    shc_status guarded(F &&f) noexcept
    {
        try
        {
            f();
            return SHC_OK;
        }
        catch (const sc::Error &e)
        {
            return fail(static_cast<shc_status>(e.code()), e.what());
        }
        catch (const std::bad_alloc &)
        {
            return fail(SHC_ERR_INTERNAL, "out of memory");
        }
        catch (const std::exception &e)
        {
            return fail(SHC_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return fail(SHC_ERR_INTERNAL, "unknown error");
        }
    }

    void require(const void *p, const char *name)
    {
        if (p == nullptr)
            throw sc::Error(sc::ErrorCode::InvalidArgument, std::string(name) + " must not be NULL");
    }

    char *dup_string(const std::string &s)
    {
        char *out = static_cast<char *>(std::malloc(s.size() + 1));
        if (out == nullptr)
            throw std::bad_alloc();
        std::memcpy(out, s.c_str(), s.size() + 1);
        return out;
    }

    sc::Matrix matrix_from(const double *data, std::size_t rows, std::size_t cols)
    {
        require(data, "matrix");
        if (rows == 0 || cols == 0)
            throw sc::Error(sc::ErrorCode::InvalidArgument, "matrix must be non-empty");
        sc::Matrix m(rows, cols);
        std::memcpy(m.data().data(), data, rows * cols * sizeof(double));
        return m;
    }

    void copy_out(const sc::Matrix &m, double *out)
    {
        std::memcpy(out, m.data().data(), m.data().size() * sizeof(double));
    }

    sc::CholeskyFactor factor_from(const double *lower, std::size_t n)
    {
        return sc::CholeskyFactor(matrix_from(lower, n, n));
    }

    void fill_cell(const sc::CellStats &c, shc_cell *out)
    {
        out->x = c.point.x;
        out->y = c.point.y;
        out->mean_db = c.mean_db;
        out->std_db = c.std_db;
        out->replicas = c.replicas_used;
        out->failed = c.error ? 1 : 0;
    }

    sc::ShadowParams shadow_params(double sigma_db, double beta, std::size_t n_links)
    {
        sc::ShadowParams p;
        p.sigma_db = sigma_db;
        p.beta = beta;
        p.n_links = n_links;
        return p;
    }
}

// ------------------------------------------------------------------------
// library

const char *shc_version(void)
{
    return "1.0.0";
}

const char *shc_last_error(void)
{
    return last_error.c_str();
}

const char *shc_status_name(shc_status status)
{
    if (status == SHC_OK)
        return "Ok";
    return sc::to_string(static_cast<sc::ErrorCode>(status));
}

void shc_string_free(char *s)
{
    std::free(s);
}

uint64_t shc_default_seed(void)
{
    return sc::kDefaultSeed;
}

// ------------------------------------------------------------------------
// geometry / propagation

shc_status shc_pair_geometry_compute(double mobile_x, double mobile_y, double bs1_x, double bs1_y, double bs2_x,
                                     double bs2_y, shc_pair_geometry *out)
{
    return guarded([&]
                   {
        require(out, "out");
        const auto g = sc::pair_geometry({mobile_x, mobile_y}, {bs1_x, bs1_y}, {bs2_x, bs2_y});
        *out = {g.theta_deg, g.r_db, g.d1, g.d2}; });
}

shc_status shc_path_loss(double a, double b, double distance_m, double *out_db)
{
    return guarded([&]
                   {
        require(out_db, "out_db");
        *out_db = sc::path_loss({a, b}, distance_m); });
}

double shc_db_to_linear(double x_db)
{
    return sc::db_to_linear(x_db);
}

shc_status shc_linear_to_db(double x, double *out_db)
{
    return guarded([&]
                   {
        require(out_db, "out_db");
        *out_db = sc::linear_to_db(x); });
}

// ------------------------------------------------------------------------
// correlation

shc_status shc_table_builtin(shc_table_kind kind, shc_table **out)
{
    return guarded([&]
                   {
        require(out, "out");
        if (kind != SHC_TABLE_MEASURED && kind != SHC_TABLE_PREDICTED)
            throw sc::Error(sc::ErrorCode::InvalidArgument, "unknown table kind");
        *out = new shc_table{sc::CorrelationTable::builtin(kind == SHC_TABLE_PREDICTED ? sc::TableKind::Predicted
                                                                                        : sc::TableKind::Measured)}; });
}

shc_status shc_table_from_json(const char *json, shc_table **out)
{
    return guarded([&]
                   {
        require(json, "json");
        require(out, "out");
        *out = new shc_table{sc::table_from_json(json)}; });
}

void shc_table_free(shc_table *table)
{
    delete table;
}

shc_status shc_table_dims(const shc_table *table, size_t *rdb_bins, size_t *theta_bins)
{
    return guarded([&]
                   {
        require(table, "table");
        if (rdb_bins)
            *rdb_bins = table->value.rdb_bins();
        if (theta_bins)
            *theta_bins = table->value.theta_bins(); });
}

shc_status shc_table_alpha(const shc_table *table, size_t rdb_bin, size_t theta_bin, double *out)
{
    return guarded([&]
                   {
        require(table, "table");
        require(out, "out");
        *out = table->value.alpha(rdb_bin, theta_bin); });
}

shc_status shc_table_lookup(const shc_table *table, double theta_deg, double r_db, double *out)
{
    return guarded([&]
                   {
        require(table, "table");
        require(out, "out");
        *out = table->value.lookup(theta_deg, r_db); });
}

shc_status shc_table_format(const shc_table *table, shc_format format, char **out)
{
    return guarded([&]
                   {
        require(table, "table");
        require(out, "out");
        switch (format)
        {
        case SHC_FORMAT_CSV:
            *out = dup_string(sc::table_to_csv(table->value));
            break;
        case SHC_FORMAT_JSON:
            *out = dup_string(sc::table_to_json(table->value));
            break;
        case SHC_FORMAT_TEXT:
            *out = dup_string(sc::table_to_text(table->value));
            break;
        default:
            throw sc::Error(sc::ErrorCode::InvalidArgument, "unknown format");
        } });
}

shc_status shc_build_matrix(const shc_table *table, double mobile_x, double mobile_y, const double *stations_xy,
                            size_t n, double *out_matrix)
{
    return guarded([&]
                   {
        require(table, "table");
        require(stations_xy, "stations_xy");
        require(out_matrix, "out_matrix");
        std::vector<sc::Position> stations(n);
        for (std::size_t i = 0; i < n; ++i)
            stations[i] = {stations_xy[2 * i], stations_xy[2 * i + 1]};
        copy_out(sc::build_matrix({mobile_x, mobile_y}, stations, table->value).matrix(), out_matrix); });
}

shc_status shc_ensure_psd(const double *matrix, size_t n, double eigen_floor, double *out_matrix, int *repaired)
{
    return guarded([&]
                   {
        require(out_matrix, "out_matrix");
        const auto r = sc::repair_psd(sc::CorrelationMatrix(matrix_from(matrix, n, n)), eigen_floor);
        copy_out(r.matrix.matrix(), out_matrix);
        if (repaired)
            *repaired = r.repaired ? 1 : 0; });
}

shc_status shc_min_eigenvalue(const double *matrix, size_t n, double *out)
{
    return guarded([&]
                   {
        require(out, "out");
        *out = sc::min_eigenvalue(sc::CorrelationMatrix(matrix_from(matrix, n, n))); });
}

shc_status shc_cholesky(const double *matrix, size_t n, double *out_lower)
{
    return guarded([&]
                   {
        require(out_lower, "out_lower");
        copy_out(sc::cholesky(sc::CorrelationMatrix(matrix_from(matrix, n, n))).matrix(), out_lower); });
}

// ------------------------------------------------------------------------
// shadowing

shc_status shc_beta_from_decorrelation(double spacing_m, double decorrelation_distance_m, double *out)
{
    return guarded([&]
                   {
        require(out, "out");
        *out = sc::beta_from_decorrelation(spacing_m, decorrelation_distance_m); });
}

shc_status shc_generator_create(double sigma_db, double beta, const double *lower, size_t n_links, uint64_t seed,
                                shc_generator **out)
{
    return guarded([&]
                   {
        require(out, "out");
        *out = new shc_generator{sc::ShadowState(shadow_params(sigma_db, beta, n_links), factor_from(lower, n_links), seed)}; });
}

void shc_generator_free(shc_generator *gen)
{
    delete gen;
}

shc_status shc_generator_step(shc_generator *gen, double *out_sample)
{
    return guarded([&]
                   {
        require(gen, "generator");
        require(out_sample, "out_sample");
        const auto s = gen->state.step();
        std::memcpy(out_sample, s.data(), s.size() * sizeof(double)); });
}

shc_status shc_generator_current(const shc_generator *gen, double *out_sample)
{
    return guarded([&]
                   {
        require(gen, "generator");
        require(out_sample, "out_sample");
        const auto s = gen->state.current();
        std::memcpy(out_sample, s.data(), s.size() * sizeof(double)); });
}

uint64_t shc_generator_steps(const shc_generator *gen)
{
    return gen ? gen->state.k() : 0;
}

shc_status shc_generate(double sigma_db, double beta, const double *lower, size_t n_links, uint64_t seed,
                        size_t n_steps, double *out)
{
    return guarded([&]
                   {
        require(out, "out");
        copy_out(sc::generate(shadow_params(sigma_db, beta, n_links), factor_from(lower, n_links), seed, n_steps), out); });
}

shc_status shc_draw_static(double sigma_db, const double *lower, size_t n_links, uint64_t seed, size_t n_draws,
                           double *out)
{
    return guarded([&]
                   {
        require(out, "out");
        copy_out(sc::draw_static(shadow_params(sigma_db, 0.0, n_links), factor_from(lower, n_links), seed, n_draws), out); });
}

shc_status shc_samples_format(const double *samples, size_t n_links, size_t n_steps, shc_format format, char **out)
{
    return guarded([&]
                   {
        require(out, "out");
        const auto m = matrix_from(samples, n_links, n_steps);
        if (format == SHC_FORMAT_CSV)
            *out = dup_string(sc::samples_to_csv(m));
        else if (format == SHC_FORMAT_JSON)
            *out = dup_string(sc::samples_to_json(m));
        else
            throw sc::Error(sc::ErrorCode::InvalidArgument, "samples support csv and json only"); });
}

// ------------------------------------------------------------------------
// extraction

shc_status shc_trace_from_csv(const char *csv, double spacing_m, shc_trace **out)
{
    return guarded([&]
                   {
        require(csv, "csv");
        require(out, "out");
        *out = new shc_trace{sc::trace_from_csv(csv, spacing_m)}; });
}

shc_status shc_trace_create(const double *x, const double *y, const double *distance_m, const double *level_db,
                            size_t n, double spacing_m, shc_trace **out)
{
    return guarded([&]
                   {
        require(x, "x");
        require(y, "y");
        require(distance_m, "distance_m");
        require(level_db, "level_db");
        require(out, "out");
        sc::Trace t;
        t.spacing_m = spacing_m;
        t.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            t.samples[i] = {{x[i], y[i]}, distance_m[i], level_db[i]};
        t.validate();
        *out = new shc_trace{std::move(t)}; });
}

void shc_trace_free(shc_trace *trace)
{
    delete trace;
}

size_t shc_trace_size(const shc_trace *trace)
{
    return trace ? trace->value.samples.size() : 0;
}

shc_status shc_trace_levels(const shc_trace *trace, double *out_levels)
{
    return guarded([&]
                   {
        require(trace, "trace");
        require(out_levels, "out_levels");
        for (std::size_t i = 0; i < trace->value.samples.size(); ++i)
            out_levels[i] = trace->value.samples[i].level_db; });
}

shc_status shc_remove_fast_fading(const shc_trace *trace, double window_m, shc_domain domain, shc_trace **out)
{
    return guarded([&]
                   {
        require(trace, "trace");
        require(out, "out");
        sc::AveragingDomain d;
        switch (domain)
        {
        case SHC_DOMAIN_LINEAR_POWER:
            d = sc::AveragingDomain::LinearPower;
            break;
        case SHC_DOMAIN_DECIBEL:
            d = sc::AveragingDomain::Decibel;
            break;
        case SHC_DOMAIN_AMPLITUDE:
            d = sc::AveragingDomain::Amplitude;
            break;
        default:
            throw sc::Error(sc::ErrorCode::InvalidArgument, "unknown averaging domain");
        }
        *out = new shc_trace{sc::remove_fast_fading(trace->value, window_m, d)}; });
}

shc_status shc_extract_regression(const shc_trace *trace, const uint32_t *zone_labels, size_t n_labels,
                                  shc_extraction **out)
{
    return guarded([&]
                   {
        require(trace, "trace");
        require(out, "out");
        if (zone_labels == nullptr)
        {
            *out = new shc_extraction{sc::extract_regression(trace->value)};
            return;
        }
        if (n_labels != trace->value.samples.size())
            throw sc::Error(sc::ErrorCode::DimensionMismatch,
                            "zone labels: expected " + std::to_string(trace->value.samples.size()) + " labels, got " +
                                std::to_string(n_labels));
        const auto zones = sc::zones_from_labels({zone_labels, n_labels});
        *out = new shc_extraction{sc::extract_regression(trace->value, zones)}; });
}

shc_status shc_extract_sliding(const shc_trace *trace, double window_m, shc_extraction **out)
{
    return guarded([&]
                   {
        require(trace, "trace");
        require(out, "out");
        *out = new shc_extraction{sc::extract_sliding(trace->value, window_m)}; });
}

void shc_extraction_free(shc_extraction *result)
{
    delete result;
}

size_t shc_extraction_size(const shc_extraction *result)
{
    return result ? result->value.shadowing_db.size() : 0;
}

double shc_extraction_std(const shc_extraction *result)
{
    return result ? result->value.std_db : std::numeric_limits<double>::quiet_NaN();
}

shc_status shc_extraction_shadowing(const shc_extraction *result, double *out)
{
    return guarded([&]
                   {
        require(result, "result");
        require(out, "out");
        const auto &s = result->value.shadowing_db;
        std::memcpy(out, s.data(), s.size() * sizeof(double)); });
}

size_t shc_extraction_zone_count(const shc_extraction *result)
{
    return result ? result->value.zone_fits.size() : 0;
}

shc_status shc_extraction_zone_fit(const shc_extraction *result, size_t zone, double *a, double *b)
{
    return guarded([&]
                   {
        require(result, "result");
        if (zone >= result->value.zone_fits.size())
            throw sc::Error(sc::ErrorCode::InvalidArgument, "zone index out of range");
        if (a)
            *a = result->value.zone_fits[zone].params.a;
        if (b)
            *b = result->value.zone_fits[zone].params.b; });
}

shc_status shc_extraction_format(const shc_extraction *result, shc_format format, char **out)
{
    return guarded([&]
                   {
        require(result, "result");
        require(out, "out");
        if (format == SHC_FORMAT_CSV)
            *out = dup_string(sc::extraction_to_csv(result->value));
        else if (format == SHC_FORMAT_JSON)
            *out = dup_string(sc::extraction_to_json(result->value));
        else
            throw sc::Error(sc::ErrorCode::InvalidArgument, "extraction results support csv and json only"); });
}

shc_status shc_zone_labels_from_csv(const char *csv, uint32_t **out_labels, size_t *out_n)
{
    return guarded([&]
                   {
        require(csv, "csv");
        require(out_labels, "out_labels");
        require(out_n, "out_n");
        const auto labels = sc::zone_labels_from_csv(csv);
        auto *buf = static_cast<uint32_t *>(std::malloc(std::max<std::size_t>(1, labels.size()) * sizeof(uint32_t)));
        if (buf == nullptr)
            throw std::bad_alloc();
        std::copy(labels.begin(), labels.end(), buf);
        *out_labels = buf;
        *out_n = labels.size(); });
}

void shc_labels_free(uint32_t *labels)
{
    std::free(labels);
}

shc_status shc_cross_correlation(const double *a, const double *b, size_t n, double *out)
{
    return guarded([&]
                   {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = sc::empirical_cross_correlation({a, n}, {b, n}); });
}

// ------------------------------------------------------------------------
// C/I Monte Carlo

shc_status shc_scenario_from_json(const char *json, shc_scenario **out)
{
    return guarded([&]
                   {
        require(json, "json");
        require(out, "out");
        *out = new shc_scenario{sc::scenario_from_json(json)}; });
}

shc_status shc_scenario_preset(const char *name, shc_scenario **out)
{
    return guarded([&]
                   {
        require(name, "name");
        require(out, "out");
        *out = new shc_scenario{sc::preset(name)}; });
}

void shc_scenario_free(shc_scenario *scenario)
{
    delete scenario;
}

shc_status shc_scenario_clone(const shc_scenario *scenario, shc_scenario **out)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        require(out, "out");
        *out = new shc_scenario{scenario->value}; });
}

shc_status shc_scenario_set_sigma(shc_scenario *scenario, double sigma_db)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        if (!std::isfinite(sigma_db) || sigma_db < 0.0)
            throw sc::Error(sc::ErrorCode::InvalidArgument, "sigma_db must be a non-negative number");
        scenario->value.sigma_db = sigma_db; });
}

shc_status shc_scenario_set_replicas(shc_scenario *scenario, uint64_t replicas)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        if (replicas < 2)
            throw sc::Error(sc::ErrorCode::InvalidArgument, "replicas must be at least 2");
        scenario->value.replicas = static_cast<std::size_t>(replicas); });
}

shc_status shc_scenario_set_seed(shc_scenario *scenario, uint64_t seed)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        scenario->value.seed = seed; });
}

shc_status shc_scenario_set_beta(shc_scenario *scenario, double beta)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        if (!(beta >= 0.0 && beta <= 1.0))
            throw sc::Error(sc::ErrorCode::InvalidArgument, "beta must lie in [0, 1]");
        scenario->value.beta = beta; });
}

shc_status shc_scenario_set_table(shc_scenario *scenario, const shc_table *table)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        if (table)
            scenario->value.table = table->value;
        else
            scenario->value.table.reset(); });
}

double shc_scenario_sigma(const shc_scenario *scenario)
{
    return scenario ? scenario->value.sigma_db : std::numeric_limits<double>::quiet_NaN();
}

uint64_t shc_scenario_seed(const shc_scenario *scenario)
{
    return scenario ? scenario->value.seed : 0;
}

size_t shc_scenario_links(const shc_scenario *scenario)
{
    return scenario ? scenario->value.n_links() : 0;
}

shc_status shc_ci_sample(const shc_scenario *scenario, double x, double y, const double *shadow_db, double *out_db)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        require(shadow_db, "shadow_db");
        require(out_db, "out_db");
        *out_db = sc::ci_sample(scenario->value, {x, y}, {shadow_db, scenario->value.n_links()}); });
}

shc_status shc_run_point(const shc_scenario *scenario, double x, double y, unsigned threads, shc_cell *out)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        require(out, "out");
        fill_cell(sc::run_point(scenario->value, {x, y}, 0, threads), out); });
}

shc_status shc_run_grid(const shc_scenario *scenario, unsigned threads, shc_grid **out)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        require(out, "out");
        *out = new shc_grid{sc::run_grid(scenario->value, threads)}; });
}

void shc_grid_free(shc_grid *grid)
{
    delete grid;
}

size_t shc_grid_size(const shc_grid *grid)
{
    return grid ? grid->value.cells.size() : 0;
}

shc_status shc_grid_cell(const shc_grid *grid, size_t index, shc_cell *out)
{
    return guarded([&]
                   {
        require(grid, "grid");
        require(out, "out");
        if (index >= grid->value.cells.size())
            throw sc::Error(sc::ErrorCode::InvalidArgument, "cell index out of range");
        fill_cell(grid->value.cells[index], out); });
}

const char *shc_grid_cell_error(const shc_grid *grid, size_t index)
{
    if (!grid || index >= grid->value.cells.size() || !grid->value.cells[index].error)
        return nullptr;
    return grid->value.cells[index].error->c_str();
}

shc_status shc_grid_format(const shc_grid *grid, shc_format format, char **out)
{
    return guarded([&]
                   {
        require(grid, "grid");
        require(out, "out");
        if (format == SHC_FORMAT_CSV)
            *out = dup_string(sc::grid_to_csv(grid->value));
        else if (format == SHC_FORMAT_JSON)
            *out = dup_string(sc::grid_to_json(grid->value));
        else
            throw sc::Error(sc::ErrorCode::InvalidArgument, "grids support csv and json only"); });
}

shc_status shc_sensitivity_sigma(const shc_scenario *scenario, const double *sigmas_db, size_t n_sigmas,
                                 unsigned threads, shc_sensitivity **out)
{
    return guarded([&]
                   {
        require(scenario, "scenario");
        require(sigmas_db, "sigmas_db");
        require(out, "out");
        *out = new shc_sensitivity{sc::sensitivity_sigma(scenario->value, {sigmas_db, n_sigmas}, threads)}; });
}

void shc_sensitivity_free(shc_sensitivity *report)
{
    delete report;
}

shc_status shc_sensitivity_delta(const shc_sensitivity *report, size_t sigma_index, size_t cell,
                                 double *delta_mean_db, double *delta_std_db)
{
    return guarded([&]
                   {
        require(report, "report");
        if (sigma_index >= report->value.grids.size() || cell >= report->value.grids.front().cells.size())
            throw sc::Error(sc::ErrorCode::InvalidArgument, "index out of range");
        if (delta_mean_db)
            *delta_mean_db = report->value.delta_mean(sigma_index, cell);
        if (delta_std_db)
            *delta_std_db = report->value.delta_std(sigma_index, cell); });
}

shc_status shc_sensitivity_format(const shc_sensitivity *report, shc_format format, char **out)
{
    return guarded([&]
                   {
        require(report, "report");
        require(out, "out");
        if (format == SHC_FORMAT_CSV)
            *out = dup_string(sc::sensitivity_to_csv(report->value));
        else if (format == SHC_FORMAT_JSON)
            *out = dup_string(sc::sensitivity_to_json(report->value));
        else
            throw sc::Error(sc::ErrorCode::InvalidArgument, "sensitivity reports support csv and json only"); });
}
