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

#include "shadowcorr/geometry.hpp"
#include "shadowcorr/error.hpp"

#include <cmath>
#include <numbers>

double shadowcorr::distance(Position a, Position b) noexcept
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

shadowcorr::PairGeometry shadowcorr::pair_geometry(Position mobile, Position bs1, Position bs2)
{
    const double ux = bs1.x - mobile.x, uy = bs1.y - mobile.y;
    const double vx = bs2.x - mobile.x, vy = bs2.y - mobile.y;
    const double d1 = std::hypot(ux, uy);
    const double d2 = std::hypot(vx, vy);
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw Error(ErrorCode::DegenerateGeometry, "pair_geometry: mobile coincides with a base station");

    // atan2(|u x v|, u . v) stays accurate near 0 and 180 degrees
    const double cross = ux * vy - uy * vx;
    const double dot = ux * vx + uy * vy;
    const double theta = std::atan2(std::abs(cross), dot) * 180.0 / std::numbers::pi;

    PairGeometry g;
    g.theta_deg = theta;
    // difference of logs rather than log of the ratio: swapping the stations gives identical bits
    g.r_db = 10.0 * std::abs(std::log10(d1) - std::log10(d2));
    g.d1 = d1;
    g.d2 = d2;
    return g;
}
