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

#ifndef SHADOWCORR_GEOMETRY_HPP
#define SHADOWCORR_GEOMETRY_HPP

namespace shadowcorr
{
    // Planar coordinates in meters.
    struct Position
    {
        double x = 0.0;
        double y = 0.0;

        friend bool operator==(const Position &, const Position &) = default;
    };

    // Geometry of one mobile against a pair of base stations.
    //   theta_deg  angle at the mobile between the rays to both stations, [0, 180]
    //   r_db       10 * |log10(d1 / d2)|
    struct PairGeometry
    {
        double theta_deg = 0.0;
        double r_db = 0.0;
        double d1 = 0.0;
        double d2 = 0.0;
    };

    double distance(Position a, Position b) noexcept;

    // Throws Error(DegenerateGeometry) if the mobile coincides with either station.
    PairGeometry pair_geometry(Position mobile, Position bs1, Position bs2);
}

#endif
