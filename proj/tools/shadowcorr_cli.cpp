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

// Command-line front-end over the shadowcorr C API.
//
// Exit codes: 0 success, 2 invalid configuration or input, 3 numerical
// failure (correlation matrix not factorizable), 1 anything else.
// Every output is computed in memory before the first file is written.

#include "shadowcorr/shadowcorr.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace
{
    struct Failure
    {
        int exit_code;
        std::string message;
    };

    int exit_code_for(shc_status s)
    {
        switch (s)
        {
        case SHC_ERR_NOT_POSITIVE_SEMIDEFINITE:
        case SHC_ERR_ZERO_VARIANCE:
            return 3;
        case SHC_ERR_INTERNAL:
            return 1;
        default:
            return 2;
        }
    }

    void check(shc_status s, const std::string &context)
    {
        if (s != SHC_OK)
            throw Failure{exit_code_for(s), context + ": " + shc_last_error()};
    }

    template <class T, void (*Free)(T *)>
    struct Deleter
    {
        void operator()(T *p) const noexcept { Free(p); }
    };
    using TablePtr = std::unique_ptr<shc_table, Deleter<shc_table, shc_table_free>>;
    using TracePtr = std::unique_ptr<shc_trace, Deleter<shc_trace, shc_trace_free>>;
    using ExtractionPtr = std::unique_ptr<shc_extraction, Deleter<shc_extraction, shc_extraction_free>>;
    using ScenarioPtr = std::unique_ptr<shc_scenario, Deleter<shc_scenario, shc_scenario_free>>;
    using GridPtr = std::unique_ptr<shc_grid, Deleter<shc_grid, shc_grid_free>>;
    using SensitivityPtr = std::unique_ptr<shc_sensitivity, Deleter<shc_sensitivity, shc_sensitivity_free>>;

    std::string take(char *s)
    {
        std::string out(s ? s : "");
        shc_string_free(s);
        return out;
    }

    std::string read_file(const std::string &path, const char *what)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Failure{2, std::string(what) + ": cannot open '" + path + "'"};
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // Pending output files; nothing touches the filesystem until flush().
    class OutputSet
    {
    public:
        void add(std::string path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

        void flush() const
        {
            for (const auto &[path, content] : files_)
            {
                if (path == "-")
                {
                    std::cout << content;
                    std::cout.flush();
                    continue;
                }
                std::ofstream out(path, std::ios::binary | std::ios::trunc);
                if (!out)
                    throw Failure{2, "cannot write '" + path + "'"};
                out << content;
                if (!out)
                    throw Failure{2, "failed writing '" + path + "'"};
            }
        }

    private:
        std::vector<std::pair<std::string, std::string>> files_;
    };

    std::string fmt(double v)
    {
        if (std::isnan(v))
            return "nan";
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, ptr);
    }

    std::string fixed(double v, int digits)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
        return buf;
    }

    shc_format parse_format(const std::string &f)
    {
        if (f == "json")
            return SHC_FORMAT_JSON;
        if (f == "text")
            return SHC_FORMAT_TEXT;
        return SHC_FORMAT_CSV;
    }

    struct Common
    {
        uint64_t seed = shc_default_seed();
        std::string output = "-";
        std::string format = "csv";
        unsigned threads = 0;
    };

    void add_common(CLI::App *cmd, Common &c, std::vector<std::string> formats, bool uses_seed, bool uses_threads)
    {
        cmd->add_option("--seed", c.seed, uses_seed ? "Random seed (unsigned 64-bit)" : "Random seed (unused by this subcommand)")
            ->capture_default_str();
        cmd->add_option("--output,-o", c.output, "Output path, '-' for standard output")->capture_default_str();
        cmd->add_option("--format", c.format, "Output format")
            ->check(CLI::IsMember(formats))
            ->capture_default_str();
        cmd->add_option("--threads", c.threads,
                        uses_threads ? "Worker threads, 0 = all cores (does not change results)"
                                     : "Worker threads (unused by this subcommand)")
            ->capture_default_str();
    }

    // ------------------------------------------------------------------
    // Scenario loading shared by ci-grid and sensitivity

    struct ScenarioOptions
    {
        std::string scenario_path;
        std::string preset;
        double sigma = NAN;
        double beta = NAN;
        long long replicas = -1;
        std::string table;
        bool seed_given = false;
    };

    void add_scenario_options(CLI::App *cmd, ScenarioOptions &o, bool with_sigma)
    {
        auto *file = cmd->add_option("--scenario", o.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
        auto *preset = cmd->add_option("--preset", o.preset, "Built-in scenario name (figure2)");
        file->excludes(preset);
        preset->excludes(file);
        if (with_sigma)
            cmd->add_option("--sigma", o.sigma, "Shadowing standard deviation override (dB)");
        cmd->add_option("--beta", o.beta,
                        "Shadowing lag-1 autocorrelation in [0, 1]; recorded only, per-point statistics do not depend on it");
        cmd->add_option("--replicas", o.replicas, "Monte Carlo replicas per grid point (default 100000)");
        cmd->add_option("--table", o.table,
                        "Correlation table override: predicted, measured, none, or a table JSON file");
    }

    TablePtr load_table(const std::string &choice)
    {
        shc_table *t = nullptr;
        if (choice == "predicted")
            check(shc_table_builtin(SHC_TABLE_PREDICTED, &t), "table");
        else if (choice == "measured")
            check(shc_table_builtin(SHC_TABLE_MEASURED, &t), "table");
        else
            check(shc_table_from_json(read_file(choice, "table").c_str(), &t), "table '" + choice + "'");
        return TablePtr(t);
    }

    ScenarioPtr load_scenario(const ScenarioOptions &o, const Common &c, const CLI::App *cmd)
    {
        shc_scenario *raw = nullptr;
        if (!o.scenario_path.empty())
            check(shc_scenario_from_json(read_file(o.scenario_path, "scenario").c_str(), &raw),
                  "scenario '" + o.scenario_path + "'");
        else if (!o.preset.empty())
            check(shc_scenario_preset(o.preset.c_str(), &raw), "preset");
        else
            throw Failure{2, "one of --scenario or --preset is required"};
        ScenarioPtr s(raw);

        if (!std::isnan(o.sigma))
            check(shc_scenario_set_sigma(s.get(), o.sigma), "--sigma");
        if (!std::isnan(o.beta))
            check(shc_scenario_set_beta(s.get(), o.beta), "--beta");
        if (o.replicas >= 0)
            check(shc_scenario_set_replicas(s.get(), static_cast<uint64_t>(o.replicas)), "--replicas");
        if (!o.table.empty())
        {
            if (o.table == "none")
                check(shc_scenario_set_table(s.get(), nullptr), "--table");
            else
                check(shc_scenario_set_table(s.get(), load_table(o.table).get()), "--table");
        }
        // an explicit --seed wins over the scenario file; otherwise the file's seed (or the default) stands
        if (cmd->count("--seed") > 0 || o.scenario_path.empty())
            check(shc_scenario_set_seed(s.get(), c.seed), "--seed");
        return s;
    }

    void report_cell_errors(const shc_grid *grid, const char *label)
    {
        for (size_t i = 0; i < shc_grid_size(grid); ++i)
            if (const char *err = shc_grid_cell_error(grid, i))
                std::cerr << "warning: " << label << "cell " << i << ": " << err << "\n";
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    // ------------------------------------------------------------------
    // generate

    struct GenerateOptions
    {
        long long n_links = -1;
        double sigma = 7.0;
        double beta = NAN;
        double decorrelation_m = NAN;
        double spacing_m = 0.15;
        long long steps = 0;
        std::string matrix_path;
        std::string stations_path;
        double eigen_floor = 1e-9;
        std::string sidecar;
    };

    std::vector<double> matrix_from_file(const std::string &path, size_t &n)
    {
        json j;
        try
        {
            j = json::parse(read_file(path, "matrix"));
        }
        catch (const json::parse_error &e)
        {
            throw Failure{2, "matrix '" + path + "': invalid JSON: " + e.what()};
        }
        if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
            throw Failure{2, "matrix '" + path + "': field 'matrix' must be an array of rows"};
        const auto &rows = j["matrix"];
        n = rows.size();
        std::vector<double> m;
        for (const auto &row : rows)
        {
            if (!row.is_array() || row.size() != n)
                throw Failure{2, "matrix '" + path + "': field 'matrix' must be square"};
            for (const auto &v : row)
            {
                if (!v.is_number())
                    throw Failure{2, "matrix '" + path + "': entries must be numbers"};
                m.push_back(v.get<double>());
            }
        }
        if (n == 0)
            throw Failure{2, "matrix '" + path + "': field 'matrix' is empty"};
        return m;
    }

    std::vector<double> matrix_from_stations(const std::string &path, size_t &n)
    {
        json j;
        try
        {
            j = json::parse(read_file(path, "stations"));
        }
        catch (const json::parse_error &e)
        {
            throw Failure{2, "stations '" + path + "': invalid JSON: " + e.what()};
        }
        auto number = [&](const json &obj, const char *key, const std::string &where)
        {
            if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number())
                throw Failure{2, "stations '" + path + "': " + where + " needs numeric field '" + key + "'"};
            return obj[key].get<double>();
        };
        if (!j.is_object() || !j.contains("mobile"))
            throw Failure{2, "stations '" + path + "': missing field 'mobile'"};
        const double mx = number(j["mobile"], "x", "mobile");
        const double my = number(j["mobile"], "y", "mobile");
        if (!j.contains("stations") || !j["stations"].is_array() || j["stations"].empty())
            throw Failure{2, "stations '" + path + "': field 'stations' must be a non-empty array"};
        std::vector<double> xy;
        for (size_t i = 0; i < j["stations"].size(); ++i)
        {
            const std::string where = "stations[" + std::to_string(i) + "]";
            xy.push_back(number(j["stations"][i], "x", where));
            xy.push_back(number(j["stations"][i], "y", where));
        }
        n = xy.size() / 2;

        TablePtr table;
        shc_table *raw = nullptr;
        const json t = j.contains("table") ? j["table"] : json("predicted");
        if (t.is_string() && t.get<std::string>() == "measured")
            check(shc_table_builtin(SHC_TABLE_MEASURED, &raw), "table");
        else if (t.is_string() && t.get<std::string>() == "predicted")
            check(shc_table_builtin(SHC_TABLE_PREDICTED, &raw), "table");
        else if (t.is_object())
            check(shc_table_from_json(t.dump().c_str(), &raw), "stations '" + path + "': table");
        else
            throw Failure{2, "stations '" + path + "': field 'table' must be \"predicted\", \"measured\" or an object"};
        table.reset(raw);

        std::vector<double> m(n * n);
        check(shc_build_matrix(table.get(), mx, my, xy.data(), n, m.data()), "stations '" + path + "'");
        return m;
    }

    json rows_json(const std::vector<double> &m, size_t n)
    {
        json rows = json::array();
        for (size_t i = 0; i < n; ++i)
            rows.push_back(std::vector<double>(m.begin() + static_cast<long>(i * n), m.begin() + static_cast<long>((i + 1) * n)));
        return rows;
    }

    int run_generate(const GenerateOptions &o, const Common &c)
    {
        if (o.steps < 1)
            throw Failure{2, "--steps must be at least 1"};
        if (!o.matrix_path.empty() && !o.stations_path.empty())
            throw Failure{2, "--matrix and --stations are mutually exclusive"};

        double beta = o.beta;
        if (std::isnan(beta) == std::isnan(o.decorrelation_m))
            throw Failure{2, "exactly one of --beta or --decorrelation-distance is required"};
        if (std::isnan(beta))
            check(shc_beta_from_decorrelation(o.spacing_m, o.decorrelation_m, &beta), "--decorrelation-distance");

        size_t n = 0;
        std::vector<double> m;
        if (!o.matrix_path.empty())
            m = matrix_from_file(o.matrix_path, n);
        else if (!o.stations_path.empty())
            m = matrix_from_stations(o.stations_path, n);
        else
        {
            if (o.n_links < 1)
                throw Failure{2, "--n-links is required without --matrix or --stations"};
            n = static_cast<size_t>(o.n_links);
            m.assign(n * n, 0.0);
            for (size_t i = 0; i < n; ++i)
                m[i * n + i] = 1.0;
        }
        if (o.n_links >= 0 && static_cast<size_t>(o.n_links) != n)
            throw Failure{2, "--n-links = " + std::to_string(o.n_links) + " but the correlation matrix is " +
                                 std::to_string(n) + "x" + std::to_string(n)};

        double min_eig = 0.0;
        check(shc_min_eigenvalue(m.data(), n, &min_eig), "correlation matrix");
        std::vector<double> repaired(n * n);
        int was_repaired = 0;
        check(shc_ensure_psd(m.data(), n, o.eigen_floor, repaired.data(), &was_repaired), "correlation matrix");
        if (was_repaired)
            std::cerr << "note: correlation matrix is not positive semidefinite (min eigenvalue " << fmt(min_eig)
                      << "); repaired by eigenvalue clipping to " << fmt(o.eigen_floor) << "\n";

        std::vector<double> lower(n * n);
        check(shc_cholesky(repaired.data(), n, lower.data()), "cholesky");

        std::vector<double> samples(n * static_cast<size_t>(o.steps));
        check(shc_generate(o.sigma, beta, lower.data(), n, c.seed, static_cast<size_t>(o.steps), samples.data()),
              "generate");
        char *text = nullptr;
        check(shc_samples_format(samples.data(), n, static_cast<size_t>(o.steps), parse_format(c.format), &text),
              "format");

        OutputSet out;
        out.add(c.output, take(text));

        std::string sidecar = o.sidecar;
        if (sidecar.empty() && c.output != "-")
            sidecar = c.output + ".meta.json";
        if (!sidecar.empty())
        {
            json meta{{"n_links", n},
                      {"sigma_db", o.sigma},
                      {"beta", beta},
                      {"seed", c.seed},
                      {"steps", o.steps},
                      {"input_matrix", rows_json(m, n)},
                      {"min_eigenvalue", min_eig},
                      {"repaired", was_repaired != 0},
                      {"matrix", rows_json(repaired, n)},
                      {"cholesky", rows_json(lower, n)}};
            out.add(sidecar, meta.dump(2) + "\n");
        }
        out.flush();
        return 0;
    }

    // ------------------------------------------------------------------
    // extract

    struct ExtractOptions
    {
        std::string input;
        std::string method;
        double window_m = 800.0;
        std::string zones_path;
        double spacing_m = 0.15;
        double fast_window_m = 0.0;
        std::string fast_domain = "power";
    };

    int run_extract(const ExtractOptions &o, const Common &c)
    {
        if (c.format == "text")
            throw Failure{2, "extract supports --format csv or json"};
        shc_trace *raw = nullptr;
        check(shc_trace_from_csv(read_file(o.input, "trace").c_str(), o.spacing_m, &raw), "trace '" + o.input + "'");
        TracePtr trace(raw);

        if (o.fast_window_m > 0.0)
        {
            const shc_domain d = o.fast_domain == "db" ? SHC_DOMAIN_DECIBEL
                                 : o.fast_domain == "amplitude" ? SHC_DOMAIN_AMPLITUDE
                                                                 : SHC_DOMAIN_LINEAR_POWER;
            shc_trace *smoothed = nullptr;
            check(shc_remove_fast_fading(trace.get(), o.fast_window_m, d, &smoothed), "fast fading removal");
            trace.reset(smoothed);
        }

        shc_extraction *res = nullptr;
        if (o.method == "regression")
        {
            if (o.zones_path.empty())
                check(shc_extract_regression(trace.get(), nullptr, 0, &res), "regression");
            else
            {
                uint32_t *labels = nullptr;
                size_t n_labels = 0;
                check(shc_zone_labels_from_csv(read_file(o.zones_path, "zones").c_str(), &labels, &n_labels),
                      "zones '" + o.zones_path + "'");
                const shc_status s = shc_extract_regression(trace.get(), labels, n_labels, &res);
                shc_labels_free(labels);
                check(s, "regression");
            }
        }
        else
        {
            if (!o.zones_path.empty())
                throw Failure{2, "--zones only applies to --method regression"};
            check(shc_extract_sliding(trace.get(), o.window_m, &res), "sliding window");
        }
        ExtractionPtr result(res);

        char *text = nullptr;
        check(shc_extraction_format(result.get(), parse_format(c.format), &text), "format");

        std::ostringstream summary;
        summary << "method: " << o.method << "\n";
        for (size_t z = 0; z < shc_extraction_zone_count(result.get()); ++z)
        {
            double a = 0.0, b = 0.0;
            check(shc_extraction_zone_fit(result.get(), z, &a, &b), "zone fit");
            summary << "zone " << z << ": a = " << fixed(a, 2) << " dB, b = " << fixed(b, 2) << " dB/decade\n";
        }
        summary << "shadowing std: " << fixed(shc_extraction_std(result.get()), 1) << " dB\n";

        OutputSet out;
        out.add(c.output, take(text));
        out.flush();
        (c.output == "-" ? std::cerr : std::cout) << summary.str();
        return 0;
    }

    // ------------------------------------------------------------------
    // ci-grid / sensitivity

    GridPtr run_grid(const shc_scenario *s, unsigned threads)
    {
        shc_grid *g = nullptr;
        check(shc_run_grid(s, threads, &g), "ci-grid");
        return GridPtr(g);
    }

    std::string compare_csv(const shc_grid *corr, const shc_grid *uncorr)
    {
        std::string out = "x,y,mean_db,std_db,replicas,uncorr_mean_db,uncorr_std_db,delta_mean_db,delta_std_db\n";
        for (size_t i = 0; i < shc_grid_size(corr); ++i)
        {
            shc_cell a{}, b{};
            check(shc_grid_cell(corr, i, &a), "cell");
            check(shc_grid_cell(uncorr, i, &b), "cell");
            out += fmt(a.x) + "," + fmt(a.y) + "," + fmt(a.mean_db) + "," + fmt(a.std_db) + "," +
                   std::to_string(a.replicas) + "," + fmt(b.mean_db) + "," + fmt(b.std_db) + "," +
                   fmt(a.mean_db - b.mean_db) + "," + fmt(a.std_db - b.std_db) + "\n";
        }
        return out;
    }

    json cell_json(const shc_grid *g, size_t i)
    {
        shc_cell c{};
        check(shc_grid_cell(g, i, &c), "cell");
        auto num = [](double v)
        { return std::isfinite(v) ? json(v) : json(nullptr); };
        json j{{"x", c.x}, {"y", c.y}, {"mean_db", num(c.mean_db)}, {"std_db", num(c.std_db)}, {"replicas", c.replicas}};
        if (const char *err = shc_grid_cell_error(g, i))
            j["error"] = err;
        return j;
    }

    std::string compare_json(const shc_grid *corr, const shc_grid *uncorr)
    {
        json cells = json::array();
        for (size_t i = 0; i < shc_grid_size(corr); ++i)
        {
            json a = cell_json(corr, i);
            json b = cell_json(uncorr, i);
            json j = a;
            j["uncorrelated"] = b;
            if (a["mean_db"].is_number() && b["mean_db"].is_number())
            {
                j["delta_mean_db"] = a["mean_db"].get<double>() - b["mean_db"].get<double>();
                j["delta_std_db"] = a["std_db"].get<double>() - b["std_db"].get<double>();
            }
            cells.push_back(std::move(j));
        }
        return json{{"cells", cells}}.dump() + "\n";
    }

    int run_ci_grid(const ScenarioOptions &o, bool compare, const Common &c, const CLI::App *cmd)
    {
        if (c.format == "text")
            throw Failure{2, "ci-grid supports --format csv or json"};
        auto scenario = load_scenario(o, c, cmd);
        const auto t0 = std::chrono::steady_clock::now();
        auto grid = run_grid(scenario.get(), c.threads);
        report_cell_errors(grid.get(), "");

        OutputSet out;
        if (!compare)
        {
            char *text = nullptr;
            check(shc_grid_format(grid.get(), parse_format(c.format), &text), "format");
            out.add(c.output, take(text));
        }
        else
        {
            shc_scenario *raw = nullptr;
            check(shc_scenario_clone(scenario.get(), &raw), "scenario");
            ScenarioPtr uncorrelated(raw);
            check(shc_scenario_set_table(uncorrelated.get(), nullptr), "scenario");
            auto base = run_grid(uncorrelated.get(), c.threads);
            report_cell_errors(base.get(), "uncorrelated ");
            out.add(c.output, c.format == "json" ? compare_json(grid.get(), base.get()) : compare_csv(grid.get(), base.get()));
        }
        std::cerr << "ci-grid: " << shc_grid_size(grid.get()) << " cells in " << fixed(seconds_since(t0), 2) << " s\n";
        out.flush();
        return 0;
    }

    int run_sensitivity(const ScenarioOptions &o, const std::vector<double> &sigmas, const Common &c,
                        const CLI::App *cmd)
    {
        if (c.format == "text")
            throw Failure{2, "sensitivity supports --format csv or json"};
        if (sigmas.size() < 2)
            throw Failure{2, "--sigmas needs at least two values"};
        auto scenario = load_scenario(o, c, cmd);
        shc_sensitivity *raw = nullptr;
        check(shc_sensitivity_sigma(scenario.get(), sigmas.data(), sigmas.size(), c.threads, &raw), "sensitivity");
        SensitivityPtr report(raw);
        char *text = nullptr;
        check(shc_sensitivity_format(report.get(), parse_format(c.format), &text), "format");
        OutputSet out;
        out.add(c.output, take(text));
        out.flush();
        return 0;
    }

    // ------------------------------------------------------------------
    // tables

    int run_tables(const std::string &kind, const Common &c)
    {
        shc_table *raw = nullptr;
        check(shc_table_builtin(kind == "measured" ? SHC_TABLE_MEASURED : SHC_TABLE_PREDICTED, &raw), "tables");
        TablePtr table(raw);
        char *text = nullptr;
        check(shc_table_format(table.get(), parse_format(c.format), &text), "tables");
        OutputSet out;
        out.add(c.output, take(text));
        out.flush();
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"shadowcorr: cross-correlated log-normal shadowing synthesis, extraction and C/I Monte Carlo"};
    app.require_subcommand(1);

    // generate
    Common gen_common;
    GenerateOptions gen;
    auto *cmd_gen = app.add_subcommand("generate", "Generate correlated shadowing traces (CSV: step,s_1,...,s_N in dB)");
    add_common(cmd_gen, gen_common, {"csv", "json"}, true, false);
    cmd_gen->add_option("--n-links", gen.n_links, "Number of links (inferred from --matrix/--stations)");
    cmd_gen->add_option("--sigma", gen.sigma, "Shadowing standard deviation (dB)")->capture_default_str();
    cmd_gen->add_option("--beta", gen.beta, "Lag-1 autocorrelation coefficient in [0, 1]");
    cmd_gen->add_option("--decorrelation-distance", gen.decorrelation_m,
                        "Decorrelation distance (meters); sets beta = exp(-spacing / distance)");
    cmd_gen->add_option("--sample-spacing", gen.spacing_m, "Distance between samples (meters), with --decorrelation-distance")
        ->capture_default_str();
    cmd_gen->add_option("--steps", gen.steps, "Number of samples to generate")->required();
    cmd_gen->add_option("--matrix", gen.matrix_path, "Correlation matrix JSON file {\"matrix\":[[...]]}")
        ->check(CLI::ExistingFile);
    cmd_gen->add_option("--stations", gen.stations_path,
                        "Station geometry JSON {\"mobile\":{x,y}, \"stations\":[{x,y}], \"table\":...} (meters)")
        ->check(CLI::ExistingFile);
    cmd_gen->add_option("--eigen-floor", gen.eigen_floor, "Smallest eigenvalue kept by the PSD repair")->capture_default_str();
    cmd_gen->add_option("--sidecar", gen.sidecar, "Path of the JSON echo of M and L (default: <output>.meta.json)");

    // extract
    Common ext_common;
    ExtractOptions ext;
    auto *cmd_ext = app.add_subcommand("extract", "Extract shadowing from a trace CSV (x,y,distance_m,level_db)");
    add_common(cmd_ext, ext_common, {"csv", "json"}, false, false);
    cmd_ext->add_option("--input,-i", ext.input, "Trace CSV file")->required()->check(CLI::ExistingFile);
    cmd_ext->add_option("--method", ext.method, "Extraction method")
        ->required()
        ->check(CLI::IsMember({"regression", "sliding"}));
    cmd_ext->add_option("--window", ext.window_m, "Sliding window length (meters), sliding method")->capture_default_str();
    cmd_ext->add_option("--zones", ext.zones_path, "Zone label CSV (header 'zone', one row per sample), regression method")
        ->check(CLI::ExistingFile);
    cmd_ext->add_option("--spacing", ext.spacing_m, "Distance between trace samples (meters)")->capture_default_str();
    cmd_ext->add_option("--fast-window", ext.fast_window_m, "Fast fading local-mean window (meters), 0 disables")
        ->capture_default_str();
    cmd_ext->add_option("--fast-domain", ext.fast_domain, "Averaging domain of the fast fading local mean")
        ->check(CLI::IsMember({"power", "db", "amplitude"}))
        ->capture_default_str();

    // ci-grid
    Common ci_common;
    ScenarioOptions ci;
    bool compare = false;
    auto *cmd_ci = app.add_subcommand("ci-grid", "Monte Carlo C/I mean and std (dB) over a grid (CSV: x,y,mean_db,std_db,replicas)");
    add_common(cmd_ci, ci_common, {"csv", "json"}, true, true);
    add_scenario_options(cmd_ci, ci, true);
    cmd_ci->add_flag("--compare-uncorrelated", compare,
                     "Also run without cross-correlation and add uncorrelated and delta columns (dB)");

    // sensitivity
    Common sens_common;
    ScenarioOptions sens;
    std::vector<double> sigmas{7.0, 10.0};
    auto *cmd_sens = app.add_subcommand("sensitivity", "Compare C/I grids across shadowing sigmas (dB), deltas against the first");
    add_common(cmd_sens, sens_common, {"csv", "json"}, true, true);
    add_scenario_options(cmd_sens, sens, false);
    cmd_sens->add_option("--sigmas", sigmas, "Shadowing standard deviations (dB), comma separated")
        ->delimiter(',')
        ->capture_default_str();

    // tables
    Common tab_common;
    tab_common.format = "text";
    std::string kind = "predicted";
    auto *cmd_tab = app.add_subcommand("tables", "Print a built-in cross-correlation table (theta in degrees, R_dB in dB)");
    add_common(cmd_tab, tab_common, {"text", "csv", "json"}, false, false);
    cmd_tab->add_option("--kind", kind, "Table to print")
        ->check(CLI::IsMember({"predicted", "measured"}))
        ->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (*cmd_gen)
            return run_generate(gen, gen_common);
        if (*cmd_ext)
            return run_extract(ext, ext_common);
        if (*cmd_ci)
            return run_ci_grid(ci, compare, ci_common, cmd_ci);
        if (*cmd_sens)
            return run_sensitivity(sens, sigmas, sens_common, cmd_sens);
        if (*cmd_tab)
            return run_tables(kind, tab_common);
    }
    catch (const Failure &f)
    {
        std::cerr << "error: " << f.message << "\n";
        return f.exit_code;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
