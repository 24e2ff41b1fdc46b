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

#ifndef SHADOWCORR_PROPAGATION_HPP
#define SHADOWCORR_PROPAGATION_HPP

namespace shadowcorr
{
    // Log-distance path loss a + b * log10(d), d in meters.
    // Defaults are the usual urban 900 MHz values.
    struct PathLossParams
    {
        double a = 16.0; // dB
        double b = 36.0; // dB per decade
    };

    struct SlowFading
    {
        double path_loss = 0.0; // dB
        double shadowing = 0.0; // dB
        double total = 0.0;     // dB, path_loss + shadowing
    };

    // Throws Error(InvalidDistance) if d <= 0 or not finite.
    double path_loss(const PathLossParams &params, double d);

    SlowFading slow_fading(const PathLossParams &params, double d, double shadowing_db);

    double db_to_linear(double x_db) noexcept;

    // Throws Error(NonPositivePower) if x <= 0.
    double linear_to_db(double x);
}

#endif
