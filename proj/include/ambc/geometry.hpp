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

#ifndef AMBC_GEOMETRY_HPP
#define AMBC_GEOMETRY_HPP

#include "core.hpp"

#include <vector>

namespace ambc
{
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;
    };

    inline double distance(const Point2 &p, const Point2 &q)
    {
        return std::hypot(p.x - q.x, p.y - q.y);
    }

    // Direction in which the linear array grows away from the reference antenna
    enum class ArrayAxis
    {
        NegativeY, // away from tags placed on the +y side (default)
        PositiveY
    };

    // Amplitude scaling of the per-hop gain lambda/(4 pi d)
    enum class PathLossLaw
    {
        FreeSpace,       // |g| = 1/(4 pi d)
        Squared // |g| = (1/(4 pi d))^2
    };

    // All coordinates in wavelengths. rx_antennas[0] is the reference antenna.
    struct ScenarioGeometry
    {
        Point2 tx_pos;
        std::vector<Point2> rx_antennas;
        Point2 tag_pos;
        int n_r = 0;

        double d01() const { return distance(tx_pos, rx_antennas.front()); }
        double d11() const { return distance(tag_pos, rx_antennas.front()); }
        double d2() const { return distance(tag_pos, tx_pos); }
    };

    inline constexpr double antenna_spacing = 0.5;
    inline constexpr double min_node_separation = 1e-9;

    // Tag at distance d11 from the reference antenna, seen at `angle` from the Rx->Tx axis, on the +y side
    inline Point2 tag_from_polar(double d01, double d11, double angle = pi / 4.0)
    {
        require(d11 > 0.0, "d11 must be positive");
        return {d01 / 2.0 - d11 * std::cos(angle), d11 * std::sin(angle)};
    }

    inline ScenarioGeometry build_linear_scenario(double d01, int n_r, Point2 tag_pos,
                                                  ArrayAxis axis = ArrayAxis::NegativeY)
    {
        require(std::isfinite(d01) && d01 > 0.0, "d01 must be positive");
        require(n_r >= 2, "n_r must be at least 2");
        require(std::isfinite(tag_pos.x) && std::isfinite(tag_pos.y), "tag position must be finite");

        ScenarioGeometry g;
        g.n_r = n_r;
        g.tx_pos = {-d01 / 2.0, 0.0};
        g.tag_pos = tag_pos;
        const double dir = axis == ArrayAxis::NegativeY ? -1.0 : 1.0;
        g.rx_antennas.reserve(n_r);
        for (int l = 0; l < n_r; ++l)
            g.rx_antennas.push_back({d01 / 2.0, dir * antenna_spacing * l});

        require(distance(tag_pos, g.tx_pos) > min_node_separation, "tag coincides with the Tx");
        for (const auto &p : g.rx_antennas)
            require(distance(tag_pos, p) > min_node_separation, "tag coincides with an Rx antenna");
        return g;
    }

    struct RawChannel
    {
        CVector a_hat; // direct-path gains
        CVector h_hat; // backscatter-path gains
    };

    inline double hop_amplitude(double d, PathLossLaw law)
    {
        const double g = 1.0 / (4.0 * pi * d);
        return law == PathLossLaw::FreeSpace ? g : g * g;
    }

    inline RawChannel raw_gains(const ScenarioGeometry &geom, PathLossLaw law = PathLossLaw::FreeSpace)
    {
        require(geom.n_r >= 2 && int(geom.rx_antennas.size()) == geom.n_r, "invalid geometry");
        RawChannel raw;
        raw.a_hat.resize(geom.n_r);
        raw.h_hat.resize(geom.n_r);
        const double d2 = geom.d2();
        const double g2 = hop_amplitude(d2, law);
        for (int l = 0; l < geom.n_r; ++l)
        {
            const double d0l = distance(geom.tx_pos, geom.rx_antennas[l]);
            const double d1l = distance(geom.tag_pos, geom.rx_antennas[l]);
            raw.a_hat[l] = std::polar(hop_amplitude(d0l, law), two_pi * d0l);
            raw.h_hat[l] = std::polar(hop_amplitude(d1l, law) * g2, two_pi * (d1l + d2));
        }
        return raw;
    }

    struct ChannelState
    {
        CVector a;         // unit-norm direct direction
        CVector h;         // backscatter direction, norm sqrt(delta)
        CVector c;         // unit-norm, orthogonal to a
        cdouble eta1 = 0.0;
        double eta2 = 0.0; // real, >= 0
        double delta = 0.0;
        double phi = 0.0;  // excess-path phase offset in [0, 2 pi)
        bool degenerate = false; // h lies on a; c is an arbitrary unit vector orthogonal to a

        int n_r() const { return int(a.size()); }
        CVector g_direction() const { return eta1 * a + eta2 * c; }
    };

    // Unit vector orthogonal to a, used when the backscatter direction has no orthogonal part
    inline CVector arbitrary_orthogonal(const CVector &a)
    {
        Eigen::Index k = 0;
        a.cwiseAbs().minCoeff(&k);
        CVector e = CVector::Zero(a.size());
        e[k] = 1.0;
        CVector r = e - a * a.dot(e);
        return r / r.norm();
    }

    // Decompose h on {a, c}. a must be unit norm; phi is stored as given.
    inline ChannelState channel_from_directions(const CVector &a, const CVector &h, double phi)
    {
        require(a.size() >= 2 && a.size() == h.size(), "direction sizes must match and be >= 2");
        require(std::abs(a.norm() - 1.0) < 1e-9, "a must be unit norm");
        ChannelState st;
        st.a = a;
        st.h = h;
        st.phi = wrap_two_pi(phi);
        st.eta1 = a.dot(h); // a^H h
        CVector r = h - st.eta1 * a;
        const double rn = r.norm();
        st.delta = h.squaredNorm();
        if (rn <= 1e-13 * std::max(h.norm(), 1e-300) || rn == 0.0)
        {
            st.degenerate = true;
            st.eta2 = 0.0;
            st.c = arbitrary_orthogonal(a);
        }
        else
        {
            // r^H h = |r|^2 > 0, so r/|r| already gives a real positive projection
            st.c = r / rn;
            st.eta2 = std::real(st.c.dot(h));
        }
        return st;
    }

    inline ChannelState channel_state(const RawChannel &raw, const ScenarioGeometry &geom)
    {
        const double an = raw.a_hat.norm();
        require(an > 0.0, "direct-path gains are all zero");
        const double phi = wrap_two_pi(two_pi * (geom.d11() + geom.d2() - geom.d01()));
        const double phi0 = wrap_two_pi(two_pi * geom.d01());
        CVector a = raw.a_hat / an * std::polar(1.0, -phi0);
        CVector h = raw.h_hat / an * std::polar(1.0, -(phi + phi0));
        return channel_from_directions(a, h, phi);
    }

    struct ScenarioSpec
    {
        double d01 = 80.0;
        int n_r = 8;
        Point2 tag_pos{};
        PathLossLaw law = PathLossLaw::FreeSpace;
        ArrayAxis axis = ArrayAxis::NegativeY;
    };

    inline ChannelState make_channel(const ScenarioSpec &s)
    {
        const auto geom = build_linear_scenario(s.d01, s.n_r, s.tag_pos, s.axis);
        return channel_state(raw_gains(geom, s.law), geom);
    }

    // |a_1|^2 of the unit-norm direct direction: the share of the direct power on the reference antenna
    inline double reference_antenna_share(const ChannelState &st)
    {
        return std::norm(st.a[0]);
    }
}

#endif
