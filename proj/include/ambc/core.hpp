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

#ifndef AMBC_CORE_HPP
#define AMBC_CORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ambc
{
    using cdouble = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // Thrown when an operation's precondition is violated
    class InvalidArgument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    inline void require(bool cond, const std::string &msg)
    {
        if (!cond)
            throw InvalidArgument(msg);
    }

    enum class Modulation
    {
        BPSK,
        OOK
    };

    inline std::string_view to_string(Modulation m)
    {
        return m == Modulation::BPSK ? "bpsk" : "ook";
    }

    inline Modulation parse_modulation(std::string_view s)
    {
        if (s == "bpsk" || s == "BPSK")
            return Modulation::BPSK;
        if (s == "ook" || s == "OOK")
            return Modulation::OOK;
        throw InvalidArgument("unknown modulation '" + std::string(s) + "'");
    }

    // Chip values of the two hypotheses: x0 is the "bit 0" chip, x1 the "bit 1" chip
    inline int chip_x0(Modulation m) { return m == Modulation::BPSK ? -1 : 0; }
    inline int chip_x1(Modulation) { return 1; }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

    inline double wrap_two_pi(double x)
    {
        double r = std::fmod(x, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi)
            r = 0.0;
        return r;
    }
}

#endif
