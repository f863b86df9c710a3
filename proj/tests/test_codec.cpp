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

#include "catch_amalgamated.hpp"

#include "oracles/oracles.hpp"
#include <ambc/codec.hpp>

using namespace ambc;

namespace
{
    std::vector<int> tuple_bits(std::size_t idx, int k)
    {
        std::vector<int> b(k);
        for (int j = 0; j < k; ++j)
            b[j] = int((idx >> (k - 1 - j)) & 1u);
        return b;
    }

    std::vector<std::int8_t> bipolar(const std::vector<int> &w)
    {
        std::vector<std::int8_t> out;
        for (int x : w)
            out.push_back(x ? 1 : -1);
        return out;
    }
}

TEST_CASE("Order-1 generators")
{
    const BitMatrix h1 = generator_matrix(CodeKind::Hadamard, 1);
    CHECK(h1 == BitMatrix{{1, 0, 0, 1}, {0, 1, 0, 1}});
    const BitMatrix s1 = generator_matrix(CodeKind::Simplex, 1);
    CHECK(s1 == BitMatrix{{1, 0, 1}, {0, 1, 1}});
    CHECK_THROWS_AS(generator_matrix(CodeKind::Hadamard, 0), InvalidArgument);
}

TEST_CASE("Generator shapes, rank and the zero column")
{
    for (int r = 1; r <= 6; ++r)
    {
        const auto h = generator_matrix(CodeKind::Hadamard, r);
        REQUIRE(int(h.size()) == r + 1);
        REQUIRE(int(h.front().size()) == (1 << (r + 1)));
        CHECK(oracle::gf2_rank(h) == r + 1);
        int zero_cols = 0;
        for (std::size_t j = 0; j < h.front().size(); ++j)
        {
            bool all0 = true;
            for (const auto &row : h)
                all0 = all0 && row[j] == 0;
            if (all0)
            {
                ++zero_cols;
                CHECK(int(j) == hadamard_zero_column);
            }
        }
        CHECK(zero_cols == 1);
        const auto s = generator_matrix(CodeKind::Simplex, r);
        CHECK(int(s.front().size()) == (1 << (r + 1)) - 1);
        CHECK(oracle::gf2_rank(s) == r + 1);
    }
}

TEST_CASE("Codebooks are equidistant at 2^r")
{
    for (auto kind : {CodeKind::Hadamard, CodeKind::Simplex})
        for (int r = 1; r <= 4; ++r)
        {
            const auto G = generator_matrix(kind, r);
            const int k = r + 1;
            std::vector<std::vector<int>> words;
            for (std::size_t i = 0; i < (std::size_t(1) << k); ++i)
                words.push_back(oracle::gf2_times(tuple_bits(i, k), G));
            int dmin = 1 << 30, dmax = 0;
            for (std::size_t i = 0; i < words.size(); ++i)
                for (std::size_t j = i + 1; j < words.size(); ++j)
                {
                    const int d = oracle::hamming(words[i], words[j]);
                    dmin = std::min(dmin, d);
                    dmax = std::max(dmax, d);
                }
            CHECK(dmin == (1 << r));
            CHECK(dmax == (1 << r));

            // The library codebook agrees with the GF(2) product
            const Codebook book({kind, r});
            for (std::size_t i = 0; i < words.size(); ++i)
                for (std::size_t j = 0; j < words[i].size(); ++j)
                    CHECK(int(book.word(i)[j]) == words[i][j]);
        }
}

TEST_CASE("Encoding examples")
{
    const auto h1 = CodeSpec::hadamard(1);
    CHECK(encode_bits({0, 1}, h1, Modulation::BPSK) == std::vector<std::int8_t>{-1, 1, -1, 1});
    CHECK(encode_bits({1, 1}, h1, Modulation::OOK) == std::vector<std::int8_t>{1, 1, 0, 0});
    for (int r = 1; r <= 4; ++r)
    {
        const auto chips = encode_bits(std::vector<std::uint8_t>(r + 1, 0), CodeSpec::hadamard(r), Modulation::BPSK);
        CHECK(std::all_of(chips.begin(), chips.end(), [](std::int8_t c) { return c == -1; }));
    }
    CHECK(encode_bits({1, 0, 1}, CodeSpec::uncoded(), Modulation::BPSK) == std::vector<std::int8_t>{1, -1, 1});
    CHECK(encode_bits({1, 0, 1}, CodeSpec::uncoded(), Modulation::OOK) == std::vector<std::int8_t>{1, 0, 1});
    CHECK_THROWS_AS(encode_bits({1, 0, 1}, h1, Modulation::BPSK), InvalidArgument);
}

TEST_CASE("Frame layout")
{
    std::vector<std::uint8_t> bits(40);
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = std::uint8_t((i * 7 + 3) % 5 > 2);
    const auto f = build_frame(bits, 64, CodeSpec::simplex(3), Modulation::BPSK);
    CHECK(f.length() == 342);
    CHECK(f.payload_symbols == 10);
    for (int i = 0; i < 64; ++i)
    {
        CHECK(f.chips[i] == 0);
        CHECK(f.chips[64 + i] == 1);
        CHECK(f.chips[128 + i] == -1);
    }
    for (int i = 192; i < f.length(); ++i)
        CHECK((f.chips[i] == 1 || f.chips[i] == -1));

    const auto o = build_frame(bits, 34, CodeSpec::hadamard(3), Modulation::OOK);
    for (int i = 0; i < 34; ++i)
    {
        CHECK(o.chips[i] == 0);
        CHECK(o.chips[34 + i] == 1);
        CHECK(o.chips[68 + i] == 0);
    }
    for (int i = 102; i < o.length(); ++i)
        CHECK((o.chips[i] == 0 || o.chips[i] == 1));

    const auto empty = build_frame({}, 5, CodeSpec::hadamard(2), Modulation::BPSK);
    CHECK(empty.length() == 15);
    CHECK(empty.payload_symbols == 0);
    CHECK_THROWS_AS(build_frame(bits, 0, CodeSpec::uncoded(), Modulation::BPSK), InvalidArgument);

    CHECK(chips_from_csv(frame_to_csv(f)) == f.chips);
    CHECK(frame_to_csv(empty).find('\n') == std::string::npos);
}

TEST_CASE("Round trip through the decoder")
{
    for (auto kind : {CodeKind::Hadamard, CodeKind::Simplex})
        for (int r = 1; r <= 4; ++r)
            for (auto m : {Modulation::BPSK, Modulation::OOK})
            {
                const CodeSpec code{kind, r};
                const int k = r + 1;
                std::vector<std::uint8_t> bits;
                for (std::size_t i = 0; i < (std::size_t(1) << k); ++i)
                    for (int b : tuple_bits(i, k))
                        bits.push_back(std::uint8_t(b));
                const auto chips = encode_bits(bits, code, m);
                const auto dec = decode_symbols(chips, code, m);
                CHECK(dec.bits == bits);
                for (std::size_t i = 0; i < dec.indices.size(); ++i)
                    CHECK(dec.indices[i] == i);
            }
    const auto dec = decode_symbols({1, -1, -1}, CodeSpec::uncoded(), Modulation::BPSK);
    CHECK(dec.bits == std::vector<std::uint8_t>{1, 0, 0});
}

TEST_CASE("Decoder corrects every pattern of up to floor((2^r - 1)/2) flips")
{
    for (auto kind : {CodeKind::Hadamard, CodeKind::Simplex})
        for (int r = 1; r <= 3; ++r)
        {
            const Codebook book({kind, r});
            const int n = book.code().n();
            const int t = ((1 << r) - 1) / 2;
            for (std::size_t w = 0; w < book.size(); ++w)
            {
                std::vector<int> word(book.word(w).begin(), book.word(w).end());
                // every subset of size <= t
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
                {
                    if (std::popcount(mask) > t)
                        continue;
                    auto rx = bipolar(word);
                    for (int j = 0; j < n; ++j)
                        if (mask >> j & 1u)
                            rx[j] = std::int8_t(-rx[j]);
                    REQUIRE(book.decode_one(rx.data(), Modulation::BPSK) == w);
                }
            }
        }
}

TEST_CASE("Correlation decoding equals minimum Hamming distance decoding")
{
    for (auto kind : {CodeKind::Hadamard, CodeKind::Simplex})
        for (int r = 1; r <= 3; ++r)
        {
            const Codebook book({kind, r});
            const int n = book.code().n();
            const std::uint32_t limit = n <= 16 ? (1u << n) : 0u;
            for (std::uint32_t pat = 0; pat < limit; ++pat)
            {
                std::vector<int> rx(n);
                for (int j = 0; j < n; ++j)
                    rx[j] = int(pat >> j & 1u);
                std::size_t best = 0;
                int bestd = n + 1;
                for (std::size_t w = 0; w < book.size(); ++w)
                {
                    const int d = oracle::hamming(std::vector<int>(book.word(w).begin(), book.word(w).end()), rx);
                    if (d < bestd)
                    {
                        bestd = d;
                        best = w;
                    }
                }
                auto b = bipolar(rx);
                REQUIRE(book.decode_one(b.data(), Modulation::BPSK) == best);
                std::vector<std::int8_t> ook(rx.begin(), rx.end());
                REQUIRE(book.decode_one(ook.data(), Modulation::OOK) == best);
            }
        }
}

TEST_CASE("Decoder ties resolve to the lowest index")
{
    // An all-zero decision vector correlates to 0 with every bipolar codeword
    for (int r = 1; r <= 3; ++r)
    {
        const Codebook book(CodeSpec::hadamard(r));
        std::vector<std::int8_t> zeros(book.code().n(), 0);
        CHECK(book.decode_one(zeros.data(), Modulation::BPSK) == 0);
    }
}
