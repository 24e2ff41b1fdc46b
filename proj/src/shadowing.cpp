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

#include "shadowcorr/shadowing.hpp"
#include "shadowcorr/error.hpp"

#include <cmath>
#include <string>

namespace
{
    void check_factor(const shadowcorr::ShadowParams &params, const shadowcorr::CholeskyFactor &L)
    {
        params.validate();
        if (L.size() != params.n_links)
            throw shadowcorr::Error(shadowcorr::ErrorCode::DimensionMismatch,
                                    "Cholesky factor is " + std::to_string(L.size()) + "x" + std::to_string(L.size()) +
                                        " but n_links = " + std::to_string(params.n_links));
    }
}

void shadowcorr::ShadowParams::validate() const
{
    if (!std::isfinite(sigma_db) || sigma_db < 0.0)
        throw Error(ErrorCode::InvalidArgument, "sigma must be a non-negative number of dB");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "beta must lie in [0, 1]");
    if (n_links == 0)
        throw Error(ErrorCode::InvalidArgument, "n_links must be at least 1");
}

double shadowcorr::beta_from_decorrelation(double spacing_m, double decorrelation_distance_m)
{
    if (!(spacing_m >= 0.0) || !std::isfinite(spacing_m))
        throw Error(ErrorCode::InvalidArgument, "sample spacing must be non-negative");
    if (!(decorrelation_distance_m > 0.0))
        throw Error(ErrorCode::InvalidArgument, "decorrelation distance must be positive");
    return std::exp(-spacing_m / decorrelation_distance_m);
}

shadowcorr::ShadowState::ShadowState(const ShadowParams &params, CholeskyFactor L, std::uint64_t seed)
    : params_(params), L_(std::move(L))
{
    check_factor(params_, L_);
    gain_ = std::sqrt(1.0 - params_.beta * params_.beta);
    b_.resize(params_.n_links);
    noise_.reserve(params_.n_links);
    for (std::size_t i = 0; i < params_.n_links; ++i)
    {
        NormalStream init(link_stream_seed(seed, i, StreamPurpose::Init));
        b_[i] = params_.sigma_db * init.next();
        noise_.emplace_back(link_stream_seed(seed, i, StreamPurpose::Noise));
    }
}

std::vector<double> shadowcorr::ShadowState::step()
{
    for (std::size_t i = 0; i < b_.size(); ++i)
    {
        const double g = params_.sigma_db * noise_[i].next();
        b_[i] = params_.beta * b_[i] + gain_ * g;
    }
    ++k_;
    return current();
}

std::vector<double> shadowcorr::ShadowState::current() const
{
    std::vector<double> s(b_.size());
    L_.apply(b_, s);
    return s;
}

shadowcorr::Matrix shadowcorr::generate(const ShadowParams &params, const CholeskyFactor &L, std::uint64_t seed,
                                        std::size_t n_steps)
{
    if (n_steps == 0)
        throw Error(ErrorCode::InvalidArgument, "generate: n_steps must be at least 1");
    ShadowState state(params, L, seed);
    Matrix out(params.n_links, n_steps);
    for (std::size_t c = 0; c < n_steps; ++c)
    {
        const auto s = state.step();
        for (std::size_t i = 0; i < s.size(); ++i)
            out(i, c) = s[i];
    }
    return out;
}

shadowcorr::Matrix shadowcorr::draw_static(const ShadowParams &params, const CholeskyFactor &L, std::uint64_t seed,
                                           std::size_t n_draws)
{
    check_factor(params, L);
    if (n_draws == 0)
        throw Error(ErrorCode::InvalidArgument, "draw_static: n_draws must be at least 1");

    const std::size_t n = params.n_links;
    std::vector<NormalStream> streams;
    streams.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        streams.emplace_back(link_stream_seed(seed, i, StreamPurpose::Static));

    Matrix out(n, n_draws);
    std::vector<double> g(n), s(n);
    for (std::size_t c = 0; c < n_draws; ++c)
    {
        for (std::size_t i = 0; i < n; ++i)
            g[i] = params.sigma_db * streams[i].next();
        L.apply(g, s);
        for (std::size_t i = 0; i < n; ++i)
            out(i, c) = s[i];
    }
    return out;
}
