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

#ifndef AMBC_PHY_HPP
#define AMBC_PHY_HPP

#include "codec.hpp"
#include "geometry.hpp"
#include "random.hpp"

#include <bit>
#include <cassert>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace ambc
{
    struct SampleTruth
    {
        CVector ambient;                // s[i]
        CMatrix noise;                  // omega, N_r x N
        std::vector<std::int8_t> chips; // x[i]
    };

    struct SampleBlock
    {
        CMatrix Y;                   // N_r x N
        SampleTruth truth;
        double gamma_db = 0.0;       // SNR of the unit-norm direct direction
        std::uint64_t seed = 0;
        double noise_variance = 1.0; // 0 for noiseless blocks

        int n_r() const { return int(Y.rows()); }
        int width() const { return int(Y.cols()); }
        double gamma() const { return std::isinf(gamma_db) && gamma_db < 0 ? 0.0 : db_to_linear(gamma_db); }
    };

    // Max elementwise deviation of Y from the noise-plus-signal model rebuilt from the stored truth
    inline double block_model_residual(const SampleBlock &b, const ChannelState &chan)
    {
        const double sg = std::sqrt(b.gamma());
        const CVector g = chan.g_direction() * std::polar(1.0, chan.phi);
        double worst = 0.0;
        for (int i = 0; i < b.width(); ++i)
        {
            const cdouble s = b.truth.ambient[i];
            const CVector y = sg * (chan.a * s + g * (s * double(b.truth.chips[i]))) + b.truth.noise.col(i);
            worst = std::max(worst, (y - b.Y.col(i)).cwiseAbs().maxCoeff());
        }
        return worst;
    }

    // Draw order per column i: s[i], then omega_1[i] .. omega_Nr[i].
    inline SampleBlock synthesize_block(const ChannelState &chan, const std::vector<std::int8_t> &chips,
                                        double gamma_db, std::uint64_t seed, bool noiseless = false)
    {
        require(!std::isnan(gamma_db) && gamma_db != std::numeric_limits<double>::infinity(),
                "gamma_db must be finite or -inf");
        const int nr = chan.n_r(), N = int(chips.size());
        SampleBlock b;
        b.gamma_db = gamma_db;
        b.seed = seed;
        b.noise_variance = noiseless ? 0.0 : 1.0;
        b.truth.chips = chips;
        b.truth.ambient.resize(N);
        b.truth.noise.resize(nr, N);
        b.Y.resize(nr, N);

        Rng rng(seed);
        const double sg = std::sqrt(b.gamma());
        const CVector g = chan.g_direction() * std::polar(1.0, chan.phi);
        for (int i = 0; i < N; ++i)
        {
            const cdouble s = rng.complex_normal();
            b.truth.ambient[i] = s;
            for (int l = 0; l < nr; ++l)
            {
                const cdouble w = rng.complex_normal();
                b.truth.noise(l, i) = noiseless ? cdouble(0.0) : w;
            }
            b.Y.col(i) = sg * (chan.a * s + g * (s * double(chips[i]))) + b.truth.noise.col(i);
        }
        assert(block_model_residual(b, chan) <= 1e-9 * (1.0 + sg));
        return b;
    }

    inline SampleBlock synthesize_block(const ChannelState &chan, const Frame &frame, double gamma_db,
                                        std::uint64_t seed, bool noiseless = false)
    {
        return synthesize_block(chan, frame.chips, gamma_db, seed, noiseless);
    }

    // Column-slice views into a block laid out as [Y0 | Yt+ | Yt- | payload]
    struct BlockPartition
    {
        const CMatrix *Y = nullptr;
        int L = 0, n = 0, P = 0;

        auto Y0() const { return Y->middleCols(0, L); }
        auto Yt_plus() const { return Y->middleCols(L, L); }
        auto Yt_minus() const { return Y->middleCols(2 * L, L); }
        auto Yt() const { return Y->middleCols(L, 2 * L); }
        auto payload() const { return Y->middleCols(3 * L, n * P); }
        auto training_and_payload() const { return Y->middleCols(L, 2 * L + n * P); }
    };

    inline BlockPartition partition_block(const CMatrix &Y, int L, int n, int P)
    {
        require(L >= 1 && n >= 1 && P >= 0, "invalid partition sizes");
        require(Y.cols() == 3 * Eigen::Index(L) + Eigen::Index(n) * P, "block width must equal 3L + nP");
        return {&Y, L, n, P};
    }

    inline BlockPartition partition_block(const SampleBlock &b, int L, int n, int P)
    {
        return partition_block(b.Y, L, n, P);
    }

    // Binary dump: magic "AMBCBLK1", u32 n_r, u32 N, f64 gamma_db, u64 seed, then row-major interleaved re/im f64.
    static_assert(std::endian::native == std::endian::little, "binary block format assumes a little-endian host");

    inline constexpr char block_magic[8] = {'A', 'M', 'B', 'C', 'B', 'L', 'K', '1'};

    template <typename T>
    void put_raw(std::ostream &os, T v)
    {
        os.write(reinterpret_cast<const char *>(&v), sizeof(T));
    }

    template <typename T>
    T get_raw(std::istream &is)
    {
        T v{};
        is.read(reinterpret_cast<char *>(&v), sizeof(T));
        require(bool(is), "truncated block file");
        return v;
    }

    inline void write_block_binary(std::ostream &os, const SampleBlock &b)
    {
        os.write(block_magic, sizeof(block_magic));
        put_raw<std::uint32_t>(os, std::uint32_t(b.n_r()));
        put_raw<std::uint32_t>(os, std::uint32_t(b.width()));
        put_raw<double>(os, b.gamma_db);
        put_raw<std::uint64_t>(os, b.seed);
        for (int r = 0; r < b.n_r(); ++r)
            for (int c = 0; c < b.width(); ++c)
            {
                put_raw<double>(os, b.Y(r, c).real());
                put_raw<double>(os, b.Y(r, c).imag());
            }
    }

    struct DumpedBlock
    {
        CMatrix Y;
        double gamma_db = 0.0;
        std::uint64_t seed = 0;
    };

    inline DumpedBlock read_block_binary(std::istream &is)
    {
        char magic[8];
        is.read(magic, sizeof(magic));
        require(bool(is) && std::memcmp(magic, block_magic, sizeof(magic)) == 0, "not a block dump");
        DumpedBlock d;
        const auto nr = get_raw<std::uint32_t>(is);
        const auto N = get_raw<std::uint32_t>(is);
        d.gamma_db = get_raw<double>(is);
        d.seed = get_raw<std::uint64_t>(is);
        d.Y.resize(nr, N);
        for (std::uint32_t r = 0; r < nr; ++r)
            for (std::uint32_t c = 0; c < N; ++c)
            {
                const double re = get_raw<double>(is);
                const double im = get_raw<double>(is);
                d.Y(r, c) = {re, im};
            }
        return d;
    }
}

#endif
