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

#include "shadowcorr/io.hpp"
#include "shadowcorr/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

using json = nlohmann::json;

namespace
{
    using shadowcorr::Error;
    using shadowcorr::ErrorCode;

    json parse_json(std::string_view text, const char *what)
    {
        try
        {
            return json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            throw Error(ErrorCode::Parse, std::string(what) + ": invalid JSON: " + e.what());
        }
    }

    double number_field(const json &obj, const std::string &key, const std::string &where)
    {
        if (!obj.is_object() || !obj.contains(key))
            throw Error(ErrorCode::Parse, where + ": missing field '" + key + "'");
        const auto &v = obj.at(key);
        if (!v.is_number())
            throw Error(ErrorCode::Parse, where + ": field '" + key + "' must be a number");
        return v.get<double>();
    }

    double number_field_or(const json &obj, const std::string &key, double fallback, const std::string &where)
    {
        if (!obj.contains(key))
            return fallback;
        return number_field(obj, key, where);
    }

    std::vector<double> number_array(const json &v, const std::string &where)
    {
        if (!v.is_array())
            throw Error(ErrorCode::Parse, where + " must be an array of numbers");
        std::vector<double> out;
        out.reserve(v.size());
        for (const auto &x : v)
        {
            if (!x.is_number())
                throw Error(ErrorCode::Parse, where + " must be an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

    std::vector<std::vector<double>> number_grid(const json &v, const std::string &where)
    {
        if (!v.is_array())
            throw Error(ErrorCode::Parse, where + " must be an array of arrays");
        std::vector<std::vector<double>> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(number_array(v[i], where + "[" + std::to_string(i) + "]"));
        return out;
    }

    shadowcorr::CorrelationTable table_from(const json &j)
    {
        if (!j.is_object())
            throw Error(ErrorCode::Parse, "table: expected an object");
        for (const char *key : {"theta_edges", "rdb_edges", "alphas"})
            if (!j.contains(key))
                throw Error(ErrorCode::Parse, std::string("table: missing field '") + key + "'");
        auto theta = number_array(j.at("theta_edges"), "table.theta_edges");
        auto rdb = number_array(j.at("rdb_edges"), "table.rdb_edges");
        auto alphas = number_grid(j.at("alphas"), "table.alphas");
        try
        {
            return shadowcorr::CorrelationTable(std::move(theta), std::move(rdb), std::move(alphas));
        }
        catch (const Error &e)
        {
            throw Error(ErrorCode::Parse, std::string("table: ") + e.what());
        }
    }

    shadowcorr::BaseStation station_from(const json &j, const std::string &where)
    {
        if (!j.is_object())
            throw Error(ErrorCode::Parse, where + ": expected an object");
        shadowcorr::BaseStation bs;
        bs.position.x = number_field(j, "x", where);
        bs.position.y = number_field(j, "y", where);
        bs.tx_power_dbm = number_field_or(j, "tx_dbm", bs.tx_power_dbm, where);
        bs.pathloss.a = number_field_or(j, "a", bs.pathloss.a, where);
        bs.pathloss.b = number_field_or(j, "b", bs.pathloss.b, where);
        return bs;
    }

    std::string_view trim(std::string_view s)
    {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    }

    std::vector<std::string_view> split_lines(std::string_view text)
    {
        std::vector<std::string_view> lines;
        std::size_t start = 0;
        while (start <= text.size())
        {
            const auto end = text.find('\n', start);
            const auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            lines.push_back(trim(line));
            if (end == std::string_view::npos)
                break;
            start = end + 1;
        }
        return lines;
    }

    std::vector<std::string_view> split_fields(std::string_view line)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            const auto comma = line.find(',', start);
            out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return out;
    }

    double parse_number(std::string_view field, std::size_t line_no, const char *column)
    {
        double v = 0.0;
        const auto *first = field.data();
        const auto *last = field.data() + field.size();
        if (!field.empty() && *first == '+')
            ++first;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || field.empty())
            throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": column '" + column +
                                              "' is not a number: '" + std::string(field) + "'");
        return v;
    }

    json number_or_null(double v)
    {
        return std::isfinite(v) ? json(v) : json(nullptr);
    }

    const char *method_name(shadowcorr::ExtractionMethod m)
    {
        return m == shadowcorr::ExtractionMethod::Regression ? "regression" : "sliding";
    }

    std::string bin_label(double lo, double hi, bool closed)
    {
        std::string s = "[" + shadowcorr::format_double(lo) + ",";
        s += std::isfinite(hi) ? shadowcorr::format_double(hi) + (closed ? "]" : ")") : "inf)";
        return s;
    }
}

std::string shadowcorr::format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// ------------------------------------------------------------------------
// Tables

shadowcorr::CorrelationTable shadowcorr::table_from_json(std::string_view text)
{
    return table_from(parse_json(text, "table"));
}

std::string shadowcorr::table_to_json(const CorrelationTable &table)
{
    json j;
    j["theta_edges"] = table.theta_edges();
    j["rdb_edges"] = table.rdb_edges();
    j["alphas"] = table.alphas();
    return j.dump() + "\n";
}

std::string shadowcorr::table_to_text(const CorrelationTable &table)
{
    const auto &te = table.theta_edges();
    const auto &re = table.rdb_edges();
    std::vector<std::string> header{"R_dB (dB) \\ theta (deg)"};
    for (std::size_t t = 0; t < table.theta_bins(); ++t)
        header.push_back(bin_label(te[t], te[t + 1], t + 1 == table.theta_bins()));

    std::vector<std::vector<std::string>> rows{header};
    for (std::size_t r = 0; r < table.rdb_bins(); ++r)
    {
        const double hi = r + 1 < re.size() ? re[r + 1] : INFINITY;
        std::vector<std::string> row{bin_label(re[r], hi, false)};
        for (std::size_t t = 0; t < table.theta_bins(); ++t)
            row.push_back(format_double(table.alpha(r, t)));
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto &row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());

    std::string out;
    for (const auto &row : rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            out += row[c];
            if (c + 1 < row.size())
                out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += "\n";
    }
    return out;
}

std::string shadowcorr::table_to_csv(const CorrelationTable &table)
{
    const auto &te = table.theta_edges();
    const auto &re = table.rdb_edges();
    std::string out = "rdb_lo_db,rdb_hi_db,theta_lo_deg,theta_hi_deg,alpha\n";
    for (std::size_t r = 0; r < table.rdb_bins(); ++r)
        for (std::size_t t = 0; t < table.theta_bins(); ++t)
        {
            const double hi = r + 1 < re.size() ? re[r + 1] : INFINITY;
            out += format_double(re[r]) + "," + format_double(hi) + "," + format_double(te[t]) + "," +
                   format_double(te[t + 1]) + "," + format_double(table.alpha(r, t)) + "\n";
        }
    return out;
}

// ------------------------------------------------------------------------
// Scenario / matrix

shadowcorr::Scenario shadowcorr::scenario_from_json(std::string_view text)
{
    const json j = parse_json(text, "scenario");
    if (!j.is_object())
        throw Error(ErrorCode::Parse, "scenario: expected an object");

    Scenario s;
    if (!j.contains("source"))
        throw Error(ErrorCode::Parse, "scenario: missing field 'source'");
    s.source = station_from(j.at("source"), "scenario.source");

    if (!j.contains("interferers") || !j.at("interferers").is_array())
        throw Error(ErrorCode::Parse, "scenario: field 'interferers' must be an array");
    const auto &inter = j.at("interferers");
    for (std::size_t i = 0; i < inter.size(); ++i)
        s.interferers.push_back(station_from(inter[i], "scenario.interferers[" + std::to_string(i) + "]"));

    s.sigma_db = number_field_or(j, "sigma_db", s.sigma_db, "scenario");
    s.beta = number_field_or(j, "beta", s.beta, "scenario");

    if (j.contains("table"))
    {
        const auto &t = j.at("table");
        if (t.is_string())
        {
            const auto name = t.get<std::string>();
            if (name == "predicted")
                s.table = CorrelationTable::builtin(TableKind::Predicted);
            else if (name == "measured")
                s.table = CorrelationTable::builtin(TableKind::Measured);
            else if (name == "none")
                s.table.reset();
            else
                throw Error(ErrorCode::Parse, "scenario: field 'table' must be \"predicted\", \"measured\", \"none\" or an object");
        }
        else
            s.table = table_from(t);
    }
    else
        s.table = CorrelationTable::builtin(TableKind::Predicted);

    if (!j.contains("grid") || !j.at("grid").is_array())
        throw Error(ErrorCode::Parse, "scenario: field 'grid' must be an array of {x, y}");
    const auto &grid = j.at("grid");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const std::string where = "scenario.grid[" + std::to_string(i) + "]";
        s.grid.push_back({number_field(grid[i], "x", where), number_field(grid[i], "y", where)});
    }

    if (j.contains("replicas"))
    {
        const auto &r = j.at("replicas");
        if (!r.is_number_integer() || r.get<long long>() < 0)
            throw Error(ErrorCode::Parse, "scenario: field 'replicas' must be a non-negative integer");
        s.replicas = r.get<std::size_t>();
    }
    if (j.contains("seed"))
    {
        const auto &r = j.at("seed");
        if (!r.is_number_unsigned() && !(r.is_number_integer() && r.get<long long>() >= 0))
            throw Error(ErrorCode::Parse, "scenario: field 'seed' must be a non-negative integer");
        s.seed = r.get<std::uint64_t>();
    }

    try
    {
        s.validate();
    }
    catch (const Error &e)
    {
        throw Error(ErrorCode::Parse, e.what());
    }
    return s;
}

shadowcorr::Matrix shadowcorr::matrix_from_json(std::string_view text)
{
    const json j = parse_json(text, "matrix");
    if (!j.is_object() || !j.contains("matrix"))
        throw Error(ErrorCode::Parse, "matrix: missing field 'matrix'");
    const auto rows = number_grid(j.at("matrix"), "matrix");
    try
    {
        return Matrix::from_rows(rows);
    }
    catch (const Error &e)
    {
        throw Error(ErrorCode::Parse, std::string("matrix: ") + e.what());
    }
}

// ------------------------------------------------------------------------
// Traces

shadowcorr::Trace shadowcorr::trace_from_csv(std::string_view text, double spacing_m)
{
    const auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && lines[i].empty())
        ++i;
    if (i == lines.size() || lines[i] != "x,y,distance_m,level_db")
        throw Error(ErrorCode::Parse, "trace: expected header 'x,y,distance_m,level_db'");

    Trace trace;
    trace.spacing_m = spacing_m;
    for (++i; i < lines.size(); ++i)
    {
        if (lines[i].empty())
            continue;
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 4)
            throw Error(ErrorCode::Parse, "line " + std::to_string(i + 1) + ": expected 4 columns");
        TraceSample s;
        s.position.x = parse_number(fields[0], i + 1, "x");
        s.position.y = parse_number(fields[1], i + 1, "y");
        s.distance_m = parse_number(fields[2], i + 1, "distance_m");
        s.level_db = parse_number(fields[3], i + 1, "level_db");
        trace.samples.push_back(s);
    }
    try
    {
        trace.validate();
    }
    catch (const Error &e)
    {
        throw Error(ErrorCode::Parse, e.what());
    }
    return trace;
}

std::string shadowcorr::trace_to_csv(const Trace &trace)
{
    std::string out = "x,y,distance_m,level_db\n";
    for (const auto &s : trace.samples)
        out += format_double(s.position.x) + "," + format_double(s.position.y) + "," + format_double(s.distance_m) +
               "," + format_double(s.level_db) + "\n";
    return out;
}

std::vector<std::uint32_t> shadowcorr::zone_labels_from_csv(std::string_view text)
{
    const auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && lines[i].empty())
        ++i;
    if (i == lines.size() || lines[i] != "zone")
        throw Error(ErrorCode::Parse, "zones: expected header 'zone'");
    std::vector<std::uint32_t> labels;
    for (++i; i < lines.size(); ++i)
    {
        if (lines[i].empty())
            continue;
        std::uint32_t v = 0;
        const auto line = lines[i];
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc() || ptr != line.data() + line.size())
            throw Error(ErrorCode::Parse, "zones: line " + std::to_string(i + 1) + " is not a non-negative integer");
        labels.push_back(v);
    }
    return labels;
}

// ------------------------------------------------------------------------
// Outputs

std::string shadowcorr::samples_to_csv(const Matrix &samples)
{
    std::string out = "step";
    for (std::size_t i = 0; i < samples.rows(); ++i)
        out += ",s_" + std::to_string(i + 1);
    out += "\n";
    for (std::size_t c = 0; c < samples.cols(); ++c)
    {
        out += std::to_string(c + 1);
        for (std::size_t i = 0; i < samples.rows(); ++i)
            out += "," + format_double(samples(i, c));
        out += "\n";
    }
    return out;
}

std::string shadowcorr::samples_to_json(const Matrix &samples)
{
    json steps = json::array();
    for (std::size_t c = 0; c < samples.cols(); ++c)
    {
        json row = json::array();
        for (std::size_t i = 0; i < samples.rows(); ++i)
            row.push_back(samples(i, c));
        steps.push_back({{"step", c + 1}, {"s", row}});
    }
    json j{{"n_links", samples.rows()}, {"steps", steps}};
    return j.dump() + "\n";
}

std::string shadowcorr::extraction_to_csv(const ExtractionResult &result)
{
    std::string out = "index,shadowing_db\n";
    for (std::size_t i = 0; i < result.shadowing_db.size(); ++i)
        out += std::to_string(i) + "," + format_double(result.shadowing_db[i]) + "\n";
    return out;
}

std::string shadowcorr::extraction_to_json(const ExtractionResult &result)
{
    json zones = json::array();
    for (const auto &z : result.zone_fits)
        zones.push_back({{"a", z.params.a}, {"b", z.params.b}, {"samples", z.samples}});
    json j{{"method", method_name(result.method)},
           {"std_db", result.std_db},
           {"zones", zones},
           {"shadowing_db", result.shadowing_db}};
    return j.dump() + "\n";
}

std::string shadowcorr::grid_to_csv(const CIGrid &grid)
{
    std::string out = "x,y,mean_db,std_db,replicas\n";
    for (const auto &c : grid.cells)
        out += format_double(c.point.x) + "," + format_double(c.point.y) + "," + format_double(c.mean_db) + "," +
               format_double(c.std_db) + "," + std::to_string(c.replicas_used) + "\n";
    return out;
}

std::string shadowcorr::grid_to_json(const CIGrid &grid)
{
    json cells = json::array();
    for (const auto &c : grid.cells)
    {
        json cell{{"x", c.point.x},
                  {"y", c.point.y},
                  {"mean_db", number_or_null(c.mean_db)},
                  {"std_db", number_or_null(c.std_db)},
                  {"replicas", c.replicas_used}};
        if (c.error)
            cell["error"] = *c.error;
        cells.push_back(std::move(cell));
    }
    return json{{"cells", cells}}.dump() + "\n";
}

std::string shadowcorr::sensitivity_to_csv(const SensitivityReport &report)
{
    std::string out = "sigma_db,x,y,mean_db,std_db,replicas,delta_mean_db,delta_std_db\n";
    for (std::size_t s = 0; s < report.grids.size(); ++s)
        for (std::size_t c = 0; c < report.grids[s].cells.size(); ++c)
        {
            const auto &cell = report.grids[s].cells[c];
            out += format_double(report.sigmas_db[s]) + "," + format_double(cell.point.x) + "," +
                   format_double(cell.point.y) + "," + format_double(cell.mean_db) + "," + format_double(cell.std_db) +
                   "," + std::to_string(cell.replicas_used) + "," + format_double(report.delta_mean(s, c)) + "," +
                   format_double(report.delta_std(s, c)) + "\n";
        }
    return out;
}

std::string shadowcorr::sensitivity_to_json(const SensitivityReport &report)
{
    json runs = json::array();
    for (std::size_t s = 0; s < report.grids.size(); ++s)
    {
        json cells = json::array();
        for (std::size_t c = 0; c < report.grids[s].cells.size(); ++c)
        {
            const auto &cell = report.grids[s].cells[c];
            json j{{"x", cell.point.x},
                   {"y", cell.point.y},
                   {"mean_db", number_or_null(cell.mean_db)},
                   {"std_db", number_or_null(cell.std_db)},
                   {"replicas", cell.replicas_used},
                   {"delta_mean_db", number_or_null(report.delta_mean(s, c))},
                   {"delta_std_db", number_or_null(report.delta_std(s, c))}};
            if (cell.error)
                j["error"] = *cell.error;
            cells.push_back(std::move(j));
        }
        runs.push_back({{"sigma_db", report.sigmas_db[s]}, {"cells", cells}});
    }
    return json{{"runs", runs}}.dump() + "\n";
}
