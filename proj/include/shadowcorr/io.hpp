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

#ifndef SHADOWCORR_IO_HPP
#define SHADOWCORR_IO_HPP

// Text formats. Parsers throw Error(Parse) with the offending field or line.

#include "shadowcorr/ci_sim.hpp"
#include "shadowcorr/correlation.hpp"
#include "shadowcorr/extraction.hpp"
#include "shadowcorr/matrix.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shadowcorr
{
    // Shortest text that parses back to the same double.
    std::string format_double(double v);

    // {"theta_edges":[...], "rdb_edges":[...], "alphas":[[...],...]}
    CorrelationTable table_from_json(std::string_view text);
    std::string table_to_json(const CorrelationTable &table);
    std::string table_to_text(const CorrelationTable &table);
    std::string table_to_csv(const CorrelationTable &table);

    // {"source":{"x","y","tx_dbm","a","b"}, "interferers":[...], "sigma_db",
    //  "table":"predicted"|"measured"|"none"|{...}, "grid":[{"x","y"},...],
    //  "replicas", "seed", "beta"}
    // tx_dbm, a, b default to 45, 16, 36.
    Scenario scenario_from_json(std::string_view text);

    // {"matrix":[[...],...]}
    Matrix matrix_from_json(std::string_view text);

    // Header `x,y,distance_m,level_db`, one sample per row in drive order.
    Trace trace_from_csv(std::string_view text, double spacing_m);
    std::string trace_to_csv(const Trace &trace);

    // Header `zone`, one label per trace sample.
    std::vector<std::uint32_t> zone_labels_from_csv(std::string_view text);

    // `step,s_1,...,s_N`; samples is n_links x n_steps, steps numbered from 1.
    std::string samples_to_csv(const Matrix &samples);
    std::string samples_to_json(const Matrix &samples);

    // `index,shadowing_db`
    std::string extraction_to_csv(const ExtractionResult &result);
    std::string extraction_to_json(const ExtractionResult &result);

    // `x,y,mean_db,std_db,replicas`. Cells that failed carry nan statistics
    // and zero replicas; the JSON form adds an "error" member.
    std::string grid_to_csv(const CIGrid &grid);
    std::string grid_to_json(const CIGrid &grid);

    // `sigma_db,x,y,mean_db,std_db,replicas,delta_mean_db,delta_std_db`
    std::string sensitivity_to_csv(const SensitivityReport &report);
    std::string sensitivity_to_json(const SensitivityReport &report);
}

#endif
