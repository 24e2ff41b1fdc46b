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

#ifndef SHADOWCORR_RANDOM_HPP
#define SHADOWCORR_RANDOM_HPP

#include <cstdint>
#include <random>

namespace shadowcorr
{
    inline constexpr std::uint64_t kDefaultSeed = 19980601;

    // Derives an independent substream seed from (seed, stream) with a
    // splitmix64 finalizer. Adding streams never changes earlier ones.
    constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept
    {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    enum class StreamPurpose : std::uint64_t
    {
        Init = 1,
        Noise = 2,
        Static = 3,
    };

    constexpr std::uint64_t link_stream_seed(std::uint64_t seed, std::size_t link, StreamPurpose purpose) noexcept
    {
        return split_seed(split_seed(seed, link), static_cast<std::uint64_t>(purpose));
    }

    // Standard normal variates from a seeded 64-bit Mersenne twister.
    class NormalStream
    {
    public:
        explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

        double next() { return dist_(engine_); }

    private:
        std::mt19937_64 engine_;
        std::normal_distribution<double> dist_{0.0, 1.0};
    };
}

#endif
