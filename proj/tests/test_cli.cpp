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

// Drives the shadowcorr executable end to end.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "cli_runner.hpp"

#include <cmath>
#include <sstream>

using json = nlohmann::json;
using clitest::Run;
using clitest::Workspace;

namespace
{
    std::vector<std::vector<std::string>> csv_rows(const std::string &text)
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);)
        {
            std::vector<std::string> fields;
            std::istringstream ls(line);
            for (std::string f; std::getline(ls, f, ',');)
                fields.push_back(f);
            rows.push_back(fields);
        }
        return rows;
    }

    double num(const std::string &s) { return std::stod(s); }

    std::string radial_trace(std::size_t n, double spacing, auto level)
    {
        std::string out = "x,y,distance_m,level_db\n";
        char buf[160];
        for (std::size_t i = 0; i < n; ++i)
        {
            const double d = 100.0 + static_cast<double>(i) * spacing;
            std::snprintf(buf, sizeof(buf), "%.17g,0,%.17g,%.17g\n", d, d, level(d));
            out += buf;
        }
        return out;
    }
}

TEST_CASE("tables")
{
    Workspace ws;
    auto r = ws.run("tables --kind predicted");
    REQUIRE(r.status == 0);
    std::istringstream text(r.out);
    std::string header, row;
    std::getline(text, header);
    std::getline(text, row);
    std::istringstream first(row);
    std::string label, cell;
    first >> label >> cell;
    CHECK(label == "[0,2)");
    CHECK(cell == "0.8");
    CHECK(csv_rows(r.out).size() == 4);

    r = ws.run("tables --kind measured --format csv");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("0,inf,0,30,0.6\n") != std::string::npos);
    CHECK(r.out.find("0,inf,30,60,0.25\n") != std::string::npos);

    r = ws.run("tables --format json");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["alphas"][2][3] == 0.2);

    CHECK(ws.run("tables --kind bogus").status == 2);
}

TEST_CASE("generate")
{
    Workspace ws;
    SUBCASE("shape and determinism")
    {
        auto r = ws.run("generate --n-links 1 --sigma 7 --beta 0.5 --steps 100 --output " + ws.path("a.csv"));
        REQUIRE(r.status == 0);
        const auto rows = csv_rows(ws.read("a.csv"));
        REQUIRE(rows.size() == 101);
        CHECK(rows[0] == std::vector<std::string>{"step", "s_1"});
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(rows[i].size() == 2);
        CHECK(ws.run("generate --n-links 1 --sigma 7 --beta 0.5 --steps 100 --output " + ws.path("b.csv")).status == 0);
        CHECK(ws.read("a.csv") == ws.read("b.csv"));
        const auto meta = json::parse(ws.read("a.csv.meta.json"));
        CHECK(meta["repaired"] == false);
        CHECK(meta["cholesky"][0][0] == 1.0);

        r = ws.run("generate --n-links 1 --sigma 7 --beta 0.5 --steps 100 --seed 5");
        REQUIRE(r.status == 0);
        CHECK(r.out != ws.read("a.csv"));
        CHECK(ws.run("generate --n-links 1 --sigma 7 --beta 0.5 --steps 100 --seed 5").out == r.out);
    }
    SUBCASE("decorrelation distance")
    {
        auto r = ws.run("generate --n-links 2 --sigma 7 --decorrelation-distance 20 --sample-spacing 0.15 --steps 10 "
                        "--output " + ws.path("d.csv"));
        REQUIRE(r.status == 0);
        CHECK(json::parse(ws.read("d.csv.meta.json"))["beta"].get<double>() == doctest::Approx(std::exp(-0.0075)));
        CHECK(ws.run("generate --n-links 2 --sigma 7 --beta 0.5 --decorrelation-distance 20 --steps 10").status == 2);
        CHECK(ws.run("generate --n-links 2 --sigma 7 --steps 10").status == 2);
    }
    SUBCASE("non-PSD station geometry is repaired")
    {
        // station 3 seen within 30 degrees of both others, which are 40 degrees apart
        const double deg = 3.14159265358979323846 / 180.0;
        std::ostringstream cfg;
        cfg.precision(17);
        cfg << R"({"mobile":{"x":0,"y":0},"stations":[)"
            << R"({"x":)" << 1000 * std::cos(20 * deg) << R"(,"y":)" << 1000 * std::sin(20 * deg) << "},"
            << R"({"x":)" << 1000 * std::cos(-20 * deg) << R"(,"y":)" << 1000 * std::sin(-20 * deg) << "},"
            << R"({"x":1000,"y":0}],)"
            << R"("table":{"theta_edges":[0,30,180],"rdb_edges":[0],"alphas":[[0.8,0.2]]}})";
        ws.write("stations.json", cfg.str());
        auto r = ws.run("generate --stations " + ws.path("stations.json") +
                        " --sigma 7 --beta 0.3 --steps 50 --output " + ws.path("g.csv"));
        REQUIRE(r.status == 0);
        CHECK(r.err.find("repaired") != std::string::npos);
        const auto meta = json::parse(ws.read("g.csv.meta.json"));
        CHECK(meta["repaired"] == true);
        CHECK(meta["input_matrix"][0][1] == 0.2);
        CHECK(meta["input_matrix"][0][2] == 0.8);
        CHECK(meta["min_eigenvalue"].get<double>() < 0.0);
        CHECK(csv_rows(ws.read("g.csv"))[0].size() == 4);
    }
    SUBCASE("matrix file")
    {
        ws.write("m.json", R"({"matrix":[[1,0.2,0.8],[0.2,1,0.8],[0.8,0.8,1]]})");
        auto r = ws.run("generate --matrix " + ws.path("m.json") + " --sigma 7 --beta 0 --steps 5 --format json "
                        "--sidecar " + ws.path("side.json"));
        REQUIRE(r.status == 0);
        CHECK(json::parse(r.out)["n_links"] == 3);
        CHECK(json::parse(ws.read("side.json"))["repaired"] == true);
        CHECK(r.err.find("not positive semidefinite") != std::string::npos);
    }
    SUBCASE("invalid configurations write nothing")
    {
        ws.write("m.json", R"({"matrix":[[1,0.5],[0.5,1]]})");
        auto r = ws.run("generate --matrix " + ws.path("m.json") + " --n-links 3 --sigma 7 --beta 0 --steps 5 "
                        "--output " + ws.path("x.csv"));
        CHECK(r.status == 2);
        CHECK_FALSE(ws.exists("x.csv"));
        CHECK_FALSE(ws.exists("x.csv.meta.json"));
        ws.write("bad.json", R"({"matrix":[[1,0.5],[0.4,1]]})");
        CHECK(ws.run("generate --matrix " + ws.path("bad.json") + " --sigma 7 --beta 0 --steps 5 --output " +
                     ws.path("x.csv")).status == 2);
        CHECK(ws.run("generate --n-links 2 --sigma 7 --beta 1.5 --steps 5 --output " + ws.path("x.csv")).status == 2);
        CHECK(ws.run("generate --n-links 2 --sigma -1 --beta 0.5 --steps 5 --output " + ws.path("x.csv")).status == 2);
        CHECK(ws.run("generate --n-links 2 --sigma 7 --beta 0.5 --steps 0").status == 2);
        CHECK_FALSE(ws.exists("x.csv"));
    }
}

TEST_CASE("extract")
{
    Workspace ws;
    SUBCASE("sliding on a constant trace")
    {
        ws.write("flat.csv", radial_trace(6000, 0.15, [](double) { return -72.5; }));
        auto r = ws.run("extract --input " + ws.path("flat.csv") + " --method sliding --window 800");
        REQUIRE(r.status == 0);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 6001);
        CHECK(rows[0] == std::vector<std::string>{"index", "shadowing_db"});
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(rows[i][1] == "0");
        CHECK(r.err.find("shadowing std: 0.0 dB") != std::string::npos);
    }
    SUBCASE("regression on a noiseless trace")
    {
        ws.write("eq1.csv", radial_trace(4000, 0.5, [](double d) { return 16.0 + 36.0 * std::log10(d); }));
        auto r = ws.run("extract --input " + ws.path("eq1.csv") + " --method regression --spacing 0.5 --output " +
                        ws.path("out.csv"));
        REQUIRE(r.status == 0);
        CHECK(r.out.find("a = 16.00 dB, b = 36.00 dB/decade") != std::string::npos);
        CHECK(csv_rows(ws.read("out.csv")).size() == 4001);

        r = ws.run("extract --input " + ws.path("eq1.csv") + " --method regression --format json --spacing 0.5");
        REQUIRE(r.status == 0);
        CHECK(json::parse(r.out)["zones"][0]["b"].get<double>() == doctest::Approx(36.0));
    }
    SUBCASE("zones")
    {
        ws.write("eq1.csv", radial_trace(100, 1.0, [](double d) { return 16.0 + 36.0 * std::log10(d); }));
        std::string zones = "zone\n";
        for (int i = 0; i < 100; ++i)
            zones += i < 50 ? "0\n" : "1\n";
        ws.write("zones.csv", zones);
        auto r = ws.run("extract --input " + ws.path("eq1.csv") + " --method regression --spacing 1 --zones " +
                        ws.path("zones.csv"));
        REQUIRE(r.status == 0);
        CHECK(r.err.find("zone 1: a = 16.00 dB") != std::string::npos);

        std::string bad = "zone\n";
        for (int i = 0; i < 100; ++i)
            bad += i < 99 ? "0\n" : "1\n";
        ws.write("bad_zones.csv", bad);
        r = ws.run("extract --input " + ws.path("eq1.csv") + " --method regression --spacing 1 --zones " +
                   ws.path("bad_zones.csv") + " --output " + ws.path("never.csv"));
        CHECK(r.status == 2);
        CHECK(r.err.find("zone 1") != std::string::npos);
        CHECK_FALSE(ws.exists("never.csv"));
    }
    SUBCASE("bad input")
    {
        ws.write("broken.csv", "x,y,distance_m,level_db\n0,0,100,-50\n1,0,oops,-51\n");
        auto r = ws.run("extract --input " + ws.path("broken.csv") + " --method sliding --output " + ws.path("o.csv"));
        CHECK(r.status == 2);
        CHECK(r.err.find("line 3") != std::string::npos);
        CHECK_FALSE(ws.exists("o.csv"));
        ws.write("short.csv", radial_trace(100, 0.15, [](double) { return 0.0; }));
        CHECK(ws.run("extract --input " + ws.path("short.csv") + " --method sliding").status == 2);
        CHECK(ws.run("extract --input " + ws.path("short.csv") + " --method magic").status == 2);
        CHECK(ws.run("extract --input " + ws.path("missing.csv") + " --method sliding").status == 2);
    }
}

TEST_CASE("ci-grid")
{
    Workspace ws;
    SUBCASE("unknown preset")
    {
        auto r = ws.run("ci-grid --preset atlantis");
        CHECK(r.status == 2);
        CHECK(r.err.find("figure2") != std::string::npos);
    }
    SUBCASE("sigma 0 scenario")
    {
        ws.write("s.json", R"({"source":{"x":0,"y":0},"interferers":[{"x":700,"y":0},{"x":700,"y":700}],
                               "sigma_db":0,"grid":[{"x":100,"y":100},{"x":300,"y":500}],"replicas":1000})");
        auto r = ws.run("ci-grid --scenario " + ws.path("s.json"));
        REQUIRE(r.status == 0);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0] == std::vector<std::string>{"x", "y", "mean_db", "std_db", "replicas"});
        CHECK(rows[1][3] == "0");
        CHECK(rows[2][3] == "0");
    }
    SUBCASE("failing cells are reported and the rest are written")
    {
        ws.write("s.json", R"({"source":{"x":0,"y":0},"interferers":[{"x":700,"y":0}],
                               "grid":[{"x":0,"y":0},{"x":300,"y":500}],"replicas":1000})");
        auto r = ws.run("ci-grid --scenario " + ws.path("s.json"));
        REQUIRE(r.status == 0);
        CHECK(r.err.find("cell 0") != std::string::npos);
        const auto rows = csv_rows(r.out);
        CHECK(rows[1][2] == "nan");
        CHECK(rows[2][4] == "1000");
    }
    SUBCASE("bad scenario")
    {
        ws.write("s.json", R"({"source":{"x":0,"y":0},"interferers":[]})");
        CHECK(ws.run("ci-grid --scenario " + ws.path("s.json")).status == 2);
        CHECK(ws.run("ci-grid").status == 2);
        CHECK(ws.run("ci-grid --preset figure2 --scenario " + ws.path("s.json")).status == 2);
        CHECK(ws.run("ci-grid --preset figure2 --replicas 1").status == 2);
    }
    SUBCASE("compare uncorrelated")
    {
        auto r = ws.run("ci-grid --preset figure2 --sigma 7 --replicas 100000 --compare-uncorrelated");
        REQUIRE(r.status == 0);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 13);
        CHECK(rows[0].size() == 9);
        CHECK(rows[0][7] == "delta_mean_db");
        for (std::size_t i = 1; i < rows.size(); ++i)
        {
            CHECK(num(rows[i][7]) >= 0.0);
            CHECK(num(rows[i][7]) <= 1.0);
            CHECK(num(rows[i][8]) >= -2.0);
            CHECK(num(rows[i][8]) <= 0.0);
            CHECK(num(rows[i][7]) == doctest::Approx(num(rows[i][2]) - num(rows[i][5])));
        }
        r = ws.run("ci-grid --preset figure2 --replicas 5000 --compare-uncorrelated --format json");
        REQUIRE(r.status == 0);
        CHECK(json::parse(r.out)["cells"][0].contains("uncorrelated"));
    }
    SUBCASE("table override")
    {
        const auto a = ws.run("ci-grid --preset figure2 --replicas 5000 --table none");
        const auto b = ws.run("ci-grid --preset figure2 --replicas 5000 --table measured");
        REQUIRE(a.status == 0);
        REQUIRE(b.status == 0);
        CHECK(a.out != b.out);
        ws.write("t.json", R"({"theta_edges":[0,180],"rdb_edges":[0],"alphas":[[0]]})");
        CHECK(ws.run("ci-grid --preset figure2 --replicas 5000 --table " + ws.path("t.json")).out == a.out);
        CHECK(ws.run("ci-grid --preset figure2 --table nonexistent.json").status == 2);
    }
}

TEST_CASE("sensitivity")
{
    Workspace ws;
    auto r = ws.run("sensitivity --preset figure2 --sigmas 7,10 --replicas 20000");
    REQUIRE(r.status == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 25);
    CHECK(rows[0] == std::vector<std::string>{"sigma_db", "x", "y", "mean_db", "std_db", "replicas", "delta_mean_db",
                                              "delta_std_db"});
    for (std::size_t i = 13; i < rows.size(); ++i)
    {
        CHECK(rows[i][0] == "10");
        CHECK(num(rows[i][6]) < 0.0);
        CHECK(num(rows[i][7]) > 0.0);
    }
    CHECK(ws.run("sensitivity --preset figure2 --sigmas 7").status == 2);
}

TEST_CASE("help lists units")
{
    Workspace ws;
    const std::pair<const char *, std::vector<const char *>> expected[] = {
        {"generate", {"(dB)", "(meters)"}},
        {"extract", {"(meters)"}},
        {"ci-grid", {"(dB)"}},
        {"sensitivity", {"(dB)"}},
        {"tables", {"degrees", "dB"}},
    };
    for (const auto &[cmd, units] : expected)
    {
        const auto r = ws.run(std::string(cmd) + " --help");
        CHECK(r.status == 0);
        for (const char *u : units)
            CHECK_MESSAGE(r.out.find(u) != std::string::npos, cmd, " --help lacks ", u);
    }
    CHECK(ws.run("--help").status == 0);
    CHECK(ws.run("").status == 2);
    CHECK(ws.run("frobnicate").status == 2);
}
