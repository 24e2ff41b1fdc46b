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

#ifndef SHADOWCORR_ERROR_HPP
#define SHADOWCORR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace shadowcorr
{
    // Numeric values are shared with the C API status codes (shc_status).
    enum class ErrorCode : int
    {
        InvalidArgument = 1,
        DegenerateGeometry = 2,
        InvalidDistance = 3,
        NonPositivePower = 4,
        NotPositiveSemiDefinite = 5,
        DimensionMismatch = 6,
        WindowTooLarge = 7,
        DegenerateZone = 8,
        ZeroVariance = 9,
        Parse = 10,
        Io = 11,
        Internal = 12,
    };

    const char *to_string(ErrorCode code) noexcept;

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message)
            : std::runtime_error(message), code_(code) {}

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };
}

#endif
