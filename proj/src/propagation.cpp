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

#include "shadowcorr/propagation.hpp"
#include "shadowcorr/error.hpp"

#include <cmath>
#include <string>

double shadowcorr::path_loss(const PathLossParams &params, double d)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw Error(ErrorCode::InvalidDistance, "path_loss: distance must be positive, got " + std::to_string(d));
    return params.a + params.b * std::log10(d);
}

shadowcorr::SlowFading shadowcorr::slow_fading(const PathLossParams &params, double d, double shadowing_db)
{
    SlowFading s;
    s.path_loss = path_loss(params, d);
    s.shadowing = shadowing_db;
    s.total = s.path_loss + s.shadowing;
    return s;
}

double shadowcorr::db_to_linear(double x_db) noexcept
{
    return std::pow(10.0, x_db / 10.0);
}

double shadowcorr::linear_to_db(double x)
{
    if (!(x > 0.0))
        throw Error(ErrorCode::NonPositivePower, "linear_to_db: power must be positive, got " + std::to_string(x));
    return 10.0 * std::log10(x);
}
