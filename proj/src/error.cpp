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

#include "shadowcorr/error.hpp"

const char *shadowcorr::to_string(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::InvalidArgument:
        return "InvalidArgument";
    case ErrorCode::DegenerateGeometry:
        return "DegenerateGeometry";
    case ErrorCode::InvalidDistance:
        return "InvalidDistance";
    case ErrorCode::NonPositivePower:
        return "NonPositivePower";
    case ErrorCode::NotPositiveSemiDefinite:
        return "NotPositiveSemiDefinite";
    case ErrorCode::DimensionMismatch:
        return "DimensionMismatch";
    case ErrorCode::WindowTooLarge:
        return "WindowTooLarge";
    case ErrorCode::DegenerateZone:
        return "DegenerateZone";
    case ErrorCode::ZeroVariance:
        return "ZeroVariance";
    case ErrorCode::Parse:
        return "Parse";
    case ErrorCode::Io:
        return "Io";
    case ErrorCode::Internal:
        return "Internal";
    }
    return "Unknown";
}
