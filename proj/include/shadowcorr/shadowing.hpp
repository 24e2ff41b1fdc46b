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

#ifndef SHADOWCORR_SHADOWING_HPP
#define SHADOWCORR_SHADOWING_HPP

#include "shadowcorr/correlation.hpp"
#include "shadowcorr/matrix.hpp"
#include "shadowcorr/random.hpp"

#include <cstdint>
#include <vector>

namespace shadowcorr
{
    struct ShadowParams
    {
        double sigma_db = 7.0;   // shadowing standard deviation
        double beta = 0.0;       // lag-1 autocorrelation, [0, 1]
        std::size_t n_links = 1;

        // Throws Error(InvalidArgument).
        void validate() const;
    };

    // Lag-1 coefficient exp(-spacing / decorrelation_distance) of an
    // exponentially decaying autocorrelation sampled every `spacing_m`.
    double beta_from_decorrelation(double spacing_m, double decorrelation_distance_m);

    // N independent AR(1) processes b_i mixed through L:
    //   b_i(k) = beta * b_i(k-1) + sqrt(1 - beta^2) * g_i(k),  g_i ~ N(0, sigma^2)
    //   s(k)   = L * b(k)
    // b(0) is drawn from the stationary law N(0, sigma^2). Each link owns its
    // own init and noise substreams derived from the seed.
    //
    // Single owner: a state must not be stepped from two threads at once.
    class ShadowState
    {
    public:
        // Throws Error(DimensionMismatch) if L.size() != params.n_links.
        ShadowState(const ShadowParams &params, CholeskyFactor L, std::uint64_t seed);

        // Advances k and returns s(k).
        std::vector<double> step();

        // s at the current k without advancing.
        std::vector<double> current() const;

        const std::vector<double> &independent() const noexcept { return b_; }
        std::uint64_t k() const noexcept { return k_; }
        const ShadowParams &params() const noexcept { return params_; }
        const CholeskyFactor &factor() const noexcept { return L_; }

    private:
        ShadowParams params_;
        CholeskyFactor L_;
        std::vector<double> b_;
        std::vector<NormalStream> noise_;
        std::uint64_t k_ = 0;
        double gain_ = 0.0;
    };

    // n_links x n_steps; column c is the output of the (c+1)-th step().
    Matrix generate(const ShadowParams &params, const CholeskyFactor &L, std::uint64_t seed, std::size_t n_steps);

    // n_links x n_draws independent draws of sigma * L * g (no AR evolution).
    Matrix draw_static(const ShadowParams &params, const CholeskyFactor &L, std::uint64_t seed, std::size_t n_draws);
}

#endif
