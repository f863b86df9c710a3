// SPDX-License-Identifier: Apache-2.0
//
// ambc: link-level simulator for multi-antenna ambient backscatter receivers
// Copyright (C) 2026 The ambc authors
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

#ifndef AMBC_RANDOM_HPP
#define AMBC_RANDOM_HPP

#include "core.hpp"

#include <cstdint>
#include <random>

namespace ambc
{
    inline constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // Counter-based stream derivation: the seed of (stream, index) depends only on the inputs,
    // never on the order in which workers request it.
    inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index)
    {
        return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
    }

    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : eng_(seed) {}

        // Circularly-symmetric complex Gaussian with unit variance (1/2 per part)
        cdouble complex_normal() { return {normal_(eng_), normal_(eng_)}; }
        double normal() { return normal_(eng_) * std::numbers::sqrt2; }
        std::uint8_t bit() { return std::uint8_t(eng_() >> 63); }
        std::mt19937_64 &engine() { return eng_; }

    private:
        std::mt19937_64 eng_;
        std::normal_distribution<double> normal_{0.0, std::sqrt(0.5)};
    };
}

#endif
