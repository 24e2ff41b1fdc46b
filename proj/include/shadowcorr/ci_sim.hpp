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

#ifndef SHADOWCORR_CI_SIM_HPP
#define SHADOWCORR_CI_SIM_HPP

#include "shadowcorr/correlation.hpp"
#include "shadowcorr/geometry.hpp"
#include "shadowcorr/propagation.hpp"
#include "shadowcorr/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shadowcorr
{
    struct BaseStation
    {
        Position position;
        double tx_power_dbm = 45.0;
        PathLossParams pathloss;
    };

    struct Scenario
    {
        BaseStation source;
        std::vector<BaseStation> interferers;
        double sigma_db = 7.0;
        std::optional<CorrelationTable> table; // nullopt: uncorrelated links
        std::vector<Position> grid;
        std::size_t replicas = 100000;
        std::uint64_t seed = kDefaultSeed;

        // Lag-1 autocorrelation of the shadowing. Carried for completeness;
        // per-location statistics come from static draws and do not depend on it.
        double beta = 0.0;

        // Throws Error(InvalidArgument).
        void validate() const;

        std::size_t n_links() const noexcept { return 1 + interferers.size(); }
    };

    struct CellStats
    {
        Position point;
        double mean_db = 0.0;
        double std_db = 0.0;
        std::size_t replicas_used = 0;
        std::optional<std::string> error; // set when the cell could not be evaluated
    };

    struct CIGrid
    {
        std::vector<CellStats> cells; // grid order
    };

    // C/I in dB for one shadowing vector ordered [source, interferers...].
    // Shadowing adds to the link attenuation.
    double ci_sample(const Scenario &scenario, Position point, std::span<const double> shadow_db);

    // Deterministic C/I without shadowing.
    double ci_deterministic(const Scenario &scenario, Position point);

    // Correlation matrix of all links seen from `point` (identity when uncorrelated).
    CorrelationMatrix link_correlation(const Scenario &scenario, Position point);

    // Monte Carlo mean and unbiased std of C/I at one point. cell_index selects
    // the seed substream; run_grid uses the point's position in the grid.
    CellStats run_point(const Scenario &scenario, Position point, std::size_t cell_index = 0,
                        unsigned threads = 1);

    // threads == 0 uses the hardware concurrency. Output bits do not depend on it.
    CIGrid run_grid(const Scenario &scenario, unsigned threads = 0);

    struct SensitivityReport
    {
        std::vector<double> sigmas_db;
        std::vector<CIGrid> grids; // one per sigma, same seed

        // Differences against the first sigma's grid.
        double delta_mean(std::size_t sigma_index, std::size_t cell) const;
        double delta_std(std::size_t sigma_index, std::size_t cell) const;
    };

    // Throws Error(InvalidArgument) with fewer than two sigmas.
    SensitivityReport sensitivity_sigma(const Scenario &scenario, std::span<const double> sigmas_db,
                                        unsigned threads = 0);

    // Built-in scenarios. "figure2": source S at the origin, interferer N1
    // 700 m east, N2 at (700, 1050); 4 x 3 grid at 350 m pitch listed top row
    // first. The cell layout is a reconstruction, not surveyed coordinates.
    // Throws Error(InvalidArgument) listing the valid names.
    Scenario preset(std::string_view name);
    std::vector<std::string> preset_names();
}

#endif
