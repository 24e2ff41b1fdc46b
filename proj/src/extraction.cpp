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

#include "shadowcorr/extraction.hpp"
#include "shadowcorr/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace
{
    using shadowcorr::Error;
    using shadowcorr::ErrorCode;

    std::size_t half_window_samples(const shadowcorr::Trace &trace, double window_m, const char *who)
    {
        if (!(window_m > 0.0) || !std::isfinite(window_m))
            throw Error(ErrorCode::InvalidArgument, std::string(who) + ": window must be positive");
        if (trace.span_m() < window_m * (1.0 - 1e-12))
            throw Error(ErrorCode::WindowTooLarge, std::string(who) + ": trace spans " + std::to_string(trace.span_m()) +
                                                       " m, shorter than the " + std::to_string(window_m) + " m window");
        // samples j with |j - i| * spacing <= window / 2
        return static_cast<std::size_t>(std::floor(window_m / (2.0 * trace.spacing_m) + 1e-9));
    }

    // Centered mean over [i - half, i + half], truncated at both ends.
    // Sums run on offsets from v[0] so a constant input comes back exactly.
    std::vector<double> sliding_mean(const std::vector<double> &v, std::size_t half)
    {
        const std::size_t n = v.size();
        const long double ref = v[0];
        std::vector<long double> prefix(n + 1, 0.0L);
        for (std::size_t i = 0; i < n; ++i)
            prefix[i + 1] = prefix[i] + (v[i] - ref);

        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::size_t lo = i >= half ? i - half : 0;
            const std::size_t hi = std::min(n - 1, i + half);
            out[i] = static_cast<double>(ref + (prefix[hi + 1] - prefix[lo]) / static_cast<long double>(hi - lo + 1));
        }
        return out;
    }

    double sample_std(const std::vector<double> &v)
    {
        if (v.size() < 2)
            return 0.0;
        double mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        return std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
}

void shadowcorr::Trace::validate() const
{
    if (samples.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "trace: need at least 2 samples");
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
        throw Error(ErrorCode::InvalidArgument, "trace: spacing must be positive");
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const auto &s = samples[i];
        if (!(s.distance_m > 0.0) || !std::isfinite(s.distance_m))
            throw Error(ErrorCode::InvalidArgument, "trace: distance must be positive at sample " + std::to_string(i));
        if (!std::isfinite(s.level_db) || !std::isfinite(s.position.x) || !std::isfinite(s.position.y))
            throw Error(ErrorCode::InvalidArgument, "trace: non-finite value at sample " + std::to_string(i));
    }
}

shadowcorr::Trace shadowcorr::remove_fast_fading(const Trace &raw, double window_m, AveragingDomain domain)
{
    raw.validate();
    const std::size_t half = half_window_samples(raw, window_m, "remove_fast_fading");
    if (half == 0)
        return raw; // the window holds a single sample

    const std::size_t n = raw.samples.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double level = raw.samples[i].level_db;
        switch (domain)
        {
        case AveragingDomain::LinearPower:
            v[i] = std::pow(10.0, level / 10.0);
            break;
        case AveragingDomain::Decibel:
            v[i] = level;
            break;
        case AveragingDomain::Amplitude:
            v[i] = std::pow(10.0, level / 20.0);
            break;
        }
    }

    const auto mean = sliding_mean(v, half);
    Trace out = raw;
    for (std::size_t i = 0; i < n; ++i)
    {
        double level = mean[i];
        if (domain == AveragingDomain::LinearPower)
            level = 10.0 * std::log10(mean[i]);
        else if (domain == AveragingDomain::Amplitude)
            level = 20.0 * std::log10(mean[i]);
        out.samples[i].level_db = level;
    }
    return out;
}

shadowcorr::ExtractionResult shadowcorr::extract_regression(const Trace &trace,
                                                            std::span<const std::vector<std::size_t>> zones)
{
    trace.validate();
    const std::size_t n = trace.samples.size();

    std::vector<char> seen(n, 0);
    for (std::size_t z = 0; z < zones.size(); ++z)
        for (std::size_t idx : zones[z])
        {
            if (idx >= n)
                throw Error(ErrorCode::InvalidArgument, "zone " + std::to_string(z) + ": sample index " +
                                                            std::to_string(idx) + " out of range");
            if (seen[idx])
                throw Error(ErrorCode::InvalidArgument, "zones overlap at sample " + std::to_string(idx));
            seen[idx] = 1;
        }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw Error(ErrorCode::InvalidArgument, "zones do not cover every sample");

    ExtractionResult result;
    result.method = ExtractionMethod::Regression;
    result.shadowing_db.assign(n, 0.0);
    result.zone_fits.reserve(zones.size());

    for (std::size_t z = 0; z < zones.size(); ++z)
    {
        const auto &zone = zones[z];
        if (zone.size() < 2)
            throw Error(ErrorCode::DegenerateZone, "zone " + std::to_string(z) + ": needs at least 2 samples");

        double x_mean = 0.0, y_mean = 0.0;
        double x_min = INFINITY, x_max = -INFINITY;
        for (std::size_t idx : zone)
        {
            const double x = std::log10(trace.samples[idx].distance_m);
            x_mean += x;
            y_mean += trace.samples[idx].level_db;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
        }
        if (!(x_max > x_min))
            throw Error(ErrorCode::DegenerateZone, "zone " + std::to_string(z) + ": all distances are equal");
        const double count = static_cast<double>(zone.size());
        x_mean /= count;
        y_mean /= count;

        double sxx = 0.0, sxy = 0.0;
        for (std::size_t idx : zone)
        {
            const double dx = std::log10(trace.samples[idx].distance_m) - x_mean;
            sxx += dx * dx;
            sxy += dx * (trace.samples[idx].level_db - y_mean);
        }
        const double b = sxy / sxx;
        const double a = y_mean - b * x_mean;

        for (std::size_t idx : zone)
        {
            const double x = std::log10(trace.samples[idx].distance_m);
            result.shadowing_db[idx] = trace.samples[idx].level_db - (a + b * x);
        }
        result.zone_fits.push_back({PathLossParams{a, b}, zone.size()});
    }

    result.std_db = sample_std(result.shadowing_db);
    return result;
}

shadowcorr::ExtractionResult shadowcorr::extract_regression(const Trace &trace)
{
    std::vector<std::vector<std::size_t>> zones(1);
    zones[0].resize(trace.samples.size());
    for (std::size_t i = 0; i < zones[0].size(); ++i)
        zones[0][i] = i;
    return extract_regression(trace, zones);
}

shadowcorr::ExtractionResult shadowcorr::extract_sliding(const Trace &trace, double window_m)
{
    trace.validate();
    const std::size_t half = half_window_samples(trace, window_m, "extract_sliding");

    const std::size_t n = trace.samples.size();
    std::vector<double> level(n);
    for (std::size_t i = 0; i < n; ++i)
        level[i] = trace.samples[i].level_db;
    const auto mean = sliding_mean(level, half);

    ExtractionResult result;
    result.method = ExtractionMethod::SlidingWindow;
    result.shadowing_db.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        result.shadowing_db[i] = level[i] - mean[i];
    result.std_db = sample_std(result.shadowing_db);
    return result;
}

std::vector<std::vector<std::size_t>> shadowcorr::zones_from_labels(std::span<const std::uint32_t> labels)
{
    std::map<std::uint32_t, std::size_t> slot;
    std::vector<std::vector<std::size_t>> zones;
    for (std::size_t i = 0; i < labels.size(); ++i)
    {
        auto [it, inserted] = slot.try_emplace(labels[i], zones.size());
        if (inserted)
            zones.emplace_back();
        zones[it->second].push_back(i);
    }
    return zones;
}

double shadowcorr::empirical_cross_correlation(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "empirical_cross_correlation: sequences differ in length");
    if (a.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "empirical_cross_correlation: need at least 2 samples");

    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;

    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double da = a[i] - ma, db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0))
        throw Error(ErrorCode::ZeroVariance, "empirical_cross_correlation: a sequence has zero variance");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}
