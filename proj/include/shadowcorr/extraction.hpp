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

#ifndef SHADOWCORR_EXTRACTION_HPP
#define SHADOWCORR_EXTRACTION_HPP

#include "shadowcorr/geometry.hpp"
#include "shadowcorr/propagation.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace shadowcorr
{
    struct TraceSample
    {
        Position position;
        double distance_m = 0.0; // to the base station
        double level_db = 0.0;
    };

    // Received level along a drive route, in drive order.
    struct Trace
    {
        std::vector<TraceSample> samples;
        double spacing_m = 0.15; // half a wavelength at 900 MHz

        // Throws Error(InvalidArgument): < 2 samples, spacing <= 0, distance <= 0.
        void validate() const;

        double span_m() const noexcept
        {
            return samples.empty() ? 0.0 : static_cast<double>(samples.size() - 1) * spacing_m;
        }
    };

    // Domain in which the fast-fading local mean is taken.
    enum class AveragingDomain
    {
        LinearPower, // mean of 10^(L/10)
        Decibel,     // mean of L
        Amplitude,   // mean of 10^(L/20)
    };

    enum class ExtractionMethod
    {
        Regression,
        SlidingWindow,
    };

    struct ZoneFit
    {
        PathLossParams params;
        std::size_t samples = 0;
    };

    struct ExtractionResult
    {
        std::vector<double> shadowing_db;
        std::vector<ZoneFit> zone_fits; // regression only, one per zone
        ExtractionMethod method = ExtractionMethod::Regression;
        double std_db = 0.0;            // sample std (n - 1) over all samples
    };

    // Centered sliding local mean (default 40 wavelengths), truncated at the
    // trace ends. Positions and distances pass through.
    // Throws Error(WindowTooLarge) if the trace is shorter than the window.
    Trace remove_fast_fading(const Trace &raw, double window_m = 12.0,
                             AveragingDomain domain = AveragingDomain::LinearPower);

    // Least-squares fit of level = a + b*log10(d) per zone; shadowing is the
    // residual. Zones must partition [0, samples).
    // Throws Error(DegenerateZone) naming the zone index if a zone has fewer
    // than two samples or a single distinct distance.
    ExtractionResult extract_regression(const Trace &trace, std::span<const std::vector<std::size_t>> zones);
    ExtractionResult extract_regression(const Trace &trace);

    // Level minus its centered dB-domain sliding mean.
    ExtractionResult extract_sliding(const Trace &trace, double window_m = 800.0);

    // Groups sample indices by label; zone order follows first appearance.
    std::vector<std::vector<std::size_t>> zones_from_labels(std::span<const std::uint32_t> labels);

    // Pearson correlation. Throws Error(ZeroVariance) / Error(DimensionMismatch).
    double empirical_cross_correlation(std::span<const double> a, std::span<const double> b);
}

#endif
