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

#ifndef AMBC_CODEC_HPP
#define AMBC_CODEC_HPP

#include "core.hpp"

#include <cstdint>
#include <sstream>
#include <vector>

namespace ambc
{
    enum class CodeKind
    {
        Hadamard,
        Simplex,
        Uncoded
    };

    inline std::string_view to_string(CodeKind k)
    {
        switch (k)
        {
        case CodeKind::Hadamard:
            return "hadamard";
        case CodeKind::Simplex:
            return "simplex";
        default:
            return "uncoded";
        }
    }

    inline CodeKind parse_code_kind(std::string_view s)
    {
        if (s == "hadamard")
            return CodeKind::Hadamard;
        if (s == "simplex")
            return CodeKind::Simplex;
        if (s == "uncoded" || s == "none")
            return CodeKind::Uncoded;
        throw InvalidArgument("unknown code kind '" + std::string(s) + "'");
    }

    struct CodeSpec
    {
        CodeKind kind = CodeKind::Uncoded;
        int r = 0;

        static CodeSpec uncoded() { return {CodeKind::Uncoded, 0}; }
        static CodeSpec hadamard(int r) { return {CodeKind::Hadamard, r}; }
        static CodeSpec simplex(int r) { return {CodeKind::Simplex, r}; }

        // data bits per symbol
        int k() const { return kind == CodeKind::Uncoded ? 1 : r + 1; }
        // chips per symbol
        int n() const
        {
            switch (kind)
            {
            case CodeKind::Hadamard:
                return 1 << (r + 1);
            case CodeKind::Simplex:
                return (1 << (r + 1)) - 1;
            default:
                return 1;
            }
        }
        void validate() const
        {
            if (kind != CodeKind::Uncoded)
                require(r >= 1 && r <= 10, "code order r must be in [1, 10]");
        }
    };

    using BitMatrix = std::vector<std::vector<std::uint8_t>>;

    // Column of G_{H,r} that is all zero; it sits at index 2 for every r >= 1 by construction
    inline constexpr int hadamard_zero_column = 2;

    inline BitMatrix hadamard_generator(int r)
    {
        require(r >= 1, "code order r must be >= 1");
        BitMatrix g = {{1, 0, 0, 1}, {0, 1, 0, 1}};
        for (int q = 2; q <= r; ++q)
        {
            const std::size_t w = g.front().size();
            BitMatrix next(g.size() + 1, std::vector<std::uint8_t>(2 * w, 0));
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = 0; j < w; ++j)
                {
                    next[i][j] = g[i][j];
                    next[i][w + j] = std::uint8_t(g[i][j] ^ (i == 0 ? 1 : 0));
                }
            for (std::size_t j = w; j < 2 * w; ++j)
                next.back()[j] = 1;
            g = std::move(next);
        }
        return g;
    }

    inline BitMatrix generator_matrix(CodeKind kind, int r)
    {
        require(kind != CodeKind::Uncoded, "uncoded mode has no generator matrix");
        BitMatrix g = hadamard_generator(r);
        if (kind == CodeKind::Simplex)
            for (auto &row : g)
                row.erase(row.begin() + hadamard_zero_column);
        return g;
    }

    inline std::int8_t map_bit(std::uint8_t bit, Modulation m)
    {
        if (m == Modulation::BPSK)
            return bit ? std::int8_t(1) : std::int8_t(-1);
        return bit ? std::int8_t(1) : std::int8_t(0);
    }

    // All 2^k codewords. Index i holds the tuple whose first bit is the MSB of i.
    class Codebook
    {
    public:
        explicit Codebook(const CodeSpec &code) : code_(code)
        {
            code.validate();
            const int k = code.k(), n = code.n();
            words_.assign(std::size_t(1) << k, std::vector<std::uint8_t>(n, 0));
            if (code.kind == CodeKind::Uncoded)
            {
                words_[1][0] = 1;
                return;
            }
            const BitMatrix g = generator_matrix(code.kind, code.r);
            for (std::size_t i = 0; i < words_.size(); ++i)
                for (int row = 0; row < k; ++row)
                    if ((i >> (k - 1 - row)) & 1u)
                        for (int j = 0; j < n; ++j)
                            words_[i][j] ^= g[row][j];
        }

        const CodeSpec &code() const { return code_; }
        std::size_t size() const { return words_.size(); }
        const std::vector<std::uint8_t> &word(std::size_t i) const { return words_[i]; }

        static std::size_t tuple_index(const std::uint8_t *bits, int k)
        {
            std::size_t idx = 0;
            for (int j = 0; j < k; ++j)
                idx = (idx << 1) | (bits[j] & 1u);
            return idx;
        }

        // Largest bipolar correlation with the decision vector; ties go to the lowest index.
        std::size_t decode_one(const std::int8_t *decisions, Modulation m) const
        {
            const int n = code_.n();
            std::size_t best = 0;
            long best_corr = 0;
            for (std::size_t i = 0; i < words_.size(); ++i)
            {
                long corr = 0;
                for (int j = 0; j < n; ++j)
                {
                    const int d = m == Modulation::BPSK ? decisions[j] : 2 * decisions[j] - 1;
                    corr += d * (words_[i][j] ? 1 : -1);
                }
                if (i == 0 || corr > best_corr)
                {
                    best = i;
                    best_corr = corr;
                }
            }
            return best;
        }

    private:
        CodeSpec code_;
        std::vector<std::vector<std::uint8_t>> words_;
    };

    inline std::vector<std::int8_t> encode_bits(const std::vector<std::uint8_t> &bits, const CodeSpec &code,
                                                Modulation m)
    {
        const int k = code.k();
        require(bits.size() % std::size_t(k) == 0, "bit count must be a multiple of r+1");
        const Codebook book(code);
        std::vector<std::int8_t> chips;
        chips.reserve(bits.size() / k * code.n());
        for (std::size_t p = 0; p < bits.size(); p += k)
            for (auto b : book.word(Codebook::tuple_index(&bits[p], k)))
                chips.push_back(map_bit(b, m));
        return chips;
    }

    struct Frame
    {
        std::vector<std::int8_t> chips;
        int preamble_len = 0;   // L
        int payload_symbols = 0; // P
        CodeSpec code;
        Modulation modulation = Modulation::BPSK;
        std::vector<std::uint8_t> source_bits;

        int n() const { return code.n(); }
        int length() const { return int(chips.size()); }
        int payload_offset() const { return 3 * preamble_len; }
    };

    inline Frame build_frame(const std::vector<std::uint8_t> &bits, int L, const CodeSpec &code, Modulation m)
    {
        require(L >= 1, "preamble length L must be >= 1");
        Frame f;
        f.preamble_len = L;
        f.code = code;
        f.modulation = m;
        f.source_bits = bits;
        f.chips.assign(3 * std::size_t(L), 0);
        for (int i = L; i < 2 * L; ++i)
            f.chips[i] = 1;
        if (m == Modulation::BPSK)
            for (int i = 2 * L; i < 3 * L; ++i)
                f.chips[i] = -1;
        const auto payload = encode_bits(bits, code, m);
        f.chips.insert(f.chips.end(), payload.begin(), payload.end());
        f.payload_symbols = int(bits.size() / code.k());
        return f;
    }

    struct DecodeResult
    {
        std::vector<std::uint8_t> bits;
        std::vector<std::size_t> indices;
    };

    inline DecodeResult decode_symbols(const std::vector<std::int8_t> &decisions, const Codebook &book, Modulation m)
    {
        const int n = book.code().n(), k = book.code().k();
        require(decisions.size() % std::size_t(n) == 0, "decision count must be a multiple of n");
        DecodeResult out;
        const std::size_t P = decisions.size() / n;
        out.indices.reserve(P);
        out.bits.reserve(P * k);
        for (std::size_t p = 0; p < P; ++p)
        {
            const std::size_t idx = book.decode_one(&decisions[p * n], m);
            out.indices.push_back(idx);
            for (int j = 0; j < k; ++j)
                out.bits.push_back(std::uint8_t((idx >> (k - 1 - j)) & 1u));
        }
        return out;
    }

    inline DecodeResult decode_symbols(const std::vector<std::int8_t> &decisions, const CodeSpec &code, Modulation m)
    {
        return decode_symbols(decisions, Codebook(code), m);
    }

    inline std::string frame_to_csv(const Frame &f)
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < f.chips.size(); ++i)
            os << (i ? "," : "") << int(f.chips[i]);
        return os.str();
    }

    inline std::vector<std::int8_t> chips_from_csv(const std::string &line)
    {
        std::vector<std::int8_t> chips;
        std::istringstream is(line);
        std::string tok;
        while (std::getline(is, tok, ','))
        {
            const int v = std::stoi(tok);
            require(v >= -1 && v <= 1, "chip value out of {-1, 0, 1}");
            chips.push_back(std::int8_t(v));
        }
        return chips;
    }
}

#endif
