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
#include <ambc/receiver.hpp>

#include <map>

using namespace ambc;
using Catch::Approx;

namespace
{
    ChannelState channel_at(double d11, int n_r = 8)
    {
        ScenarioSpec s;
        s.n_r = n_r;
        s.tag_pos = tag_from_polar(80, d11);
        return make_channel(s);
    }

    // Model SNR in dB for a legacy SNR quoted at the reference antenna
    double model_db(const ChannelState &st, double ref_db) { return ref_db - linear_to_db(reference_antenna_share(st)); }

    std::vector<std::uint8_t> random_bits(Rng &rng, std::size_t n)
    {
        std::vector<std::uint8_t> b(n);
        for (auto &x : b)
            x = rng.bit();
        return b;
    }

    struct Tally
    {
        std::uint64_t bit_errors = 0, bits = 0, chip_errors = 0, chips = 0;
        double ber() const { return double(bit_errors) / double(bits); }
        double cer() const { return double(chip_errors) / double(chips); }
    };

    std::map<ReceiverVariant, Tally> run_trials(const ChannelState &st, Modulation m, CodeSpec code, int L, int P,
                                                double gamma_db, std::vector<ReceiverVariant> variants, int trials,
                                                std::uint64_t seed, bool noiseless = false)
    {
        std::map<ReceiverVariant, Tally> out;
        const Codebook book(code);
        for (int t = 0; t < trials; ++t)
        {
            Rng rng(derive_seed(seed, 1, t));
            const auto frame = build_frame(random_bits(rng, std::size_t(P) * code.k()), L, code, m);
            const auto block = synthesize_block(st, frame, gamma_db, derive_seed(seed, 2, t), noiseless);
            FrameDemodulator d(block, frame, st, db_to_linear(gamma_db), book);
            for (auto v : variants)
            {
                const auto o = d.run(v);
                auto &s = out[v];
                s.bit_errors += o.bit_errors;
                s.bits += o.n_bits;
                s.chip_errors += o.chip_errors;
                s.chips += o.n_chips;
            }
        }
        return out;
    }

    double axis_angle(const std::vector<ChipFeature> &f0, const std::vector<ChipFeature> &f1)
    {
        double re = 0, im = 0;
        for (const auto &f : f1)
        {
            re += f.re / f1.size();
            im += f.im / f1.size();
        }
        for (const auto &f : f0)
        {
            re -= f.re / f0.size();
            im -= f.im / f0.size();
        }
        return std::atan2(im, re);
    }

    double angle_diff(double a, double b) { return std::abs(std::remainder(a - b, two_pi)); }
}

TEST_CASE("Noiseless nulling removes silent chips and finds c")
{
    const auto st = channel_at(2);
    for (auto m : {Modulation::BPSK, Modulation::OOK})
    {
        Rng rng(1);
        const auto frame = build_frame(random_bits(rng, 60), 64, CodeSpec::uncoded(), m);
        const auto block = synthesize_block(st, frame, 30.0, 7, true);
        const auto part = partition_block(block, 64, 1, 60);
        const auto r = dpi_null_and_directions(part, m);
        CHECK(std::abs(r.est.a_hat.dot(st.a)) > 1.0 - 1e-12);
        CHECK(std::abs(r.est.c_hat.dot(st.c)) > 1.0 - 1e-9);
        CHECK(std::abs(r.est.c_hat.dot(r.est.a_hat)) <= 1e-6);
        CHECK(r.est.a_hat.norm() == Approx(1.0));
        CHECK(r.est.c_hat.norm() == Approx(1.0));
        const double scale = block.Y.colwise().norm().maxCoeff();
        int silent = 0;
        for (int i = 0; i < r.residual.cols(); ++i)
            if (frame.chips[64 + i] == 0)
            {
                ++silent;
                CHECK(r.residual.col(i).norm() < 1e-12 * scale);
            }
        CHECK(silent >= (m == Modulation::OOK ? 64 : 0));
    }
}

TEST_CASE("Backscatter direction estimate at the reference operating point")
{
    // Delta about -31 dB, 28 dB at the reference antenna, L = 64
    const auto st = channel_at(2);
    REQUIRE(linear_to_db(st.delta) == Approx(-31.5).margin(0.5));
    const double gdb = model_db(st, 28.0);
    const int L = 64, trials = 1000;
    int good = 0;
    for (int t = 0; t < trials; ++t)
    {
        const auto frame = build_frame({}, L, CodeSpec::uncoded(), Modulation::BPSK);
        const auto block = synthesize_block(st, frame, gdb, derive_seed(31, 0, t));
        const auto r = dpi_null_and_directions(partition_block(block, L, 1, 0), Modulation::BPSK);
        good += std::abs(r.est.c_hat.dot(st.c)) > 0.9;
    }
    const double rate = double(good) / trials;
    INFO("alignment rate " << rate);
    CHECK(rate >= 0.95);
    // regression baseline from the calibration run
    CHECK(rate == Approx(1.0).margin(0.01));
}

TEST_CASE("Features of a pure direct-path sample vanish")
{
    const auto st = channel_at(2);
    CMatrix Y = st.a * cdouble(3.0, -1.0);
    const auto f = chip_features(Y, st.a, st.c);
    REQUIRE(f.size() == 1);
    CHECK(std::abs(f[0].re) < 1e-14);
    CHECK(std::abs(f[0].im) < 1e-14);
}

TEST_CASE("Flipping the chip negates u and v up to the eta1 term")
{
    const auto st = channel_at(2);
    const double gdb = 30.0, g = db_to_linear(gdb);
    const auto bp = synthesize_block(st, std::vector<std::int8_t>(200, 1), gdb, 5, true);
    const auto bm = synthesize_block(st, std::vector<std::int8_t>(200, -1), gdb, 5, true);
    REQUIRE(bp.truth.ambient == bm.truth.ambient);
    const auto sp = chip_statistics(bp.Y, st.a, st.c), sm = chip_statistics(bm.Y, st.a, st.c);
    for (int i = 0; i < 200; ++i)
    {
        const double mag = g * std::norm(bp.truth.ambient[i]) * st.eta2;
        CHECK(std::abs(sp.u[i] + sm.u[i]) <= 1e-12 * std::abs(sp.u[i]));
        // v(x) = gamma |s|^2 eta2 e^{j phi} x (1 + conj(eta1 e^{j phi}) x)
        const cdouble expect = 2.0 * mag * std::conj(st.eta1);
        CHECK(std::abs(sp.v[i] + sm.v[i] - expect) <= 1e-9 * mag);
        CHECK(std::abs(sp.v[i] + sm.v[i]) <= 2.1 * std::abs(st.eta1) * std::abs(sp.v[i]));
    }
}

TEST_CASE("Training clusters separate along the phase-offset direction")
{
    // Delta near -35 dB, 28 dB at the reference antenna, L = 64
    const auto st = channel_at(3.2);
    REQUIRE(linear_to_db(st.delta) == Approx(-35.0).margin(1.0));
    const double gdb = model_db(st, 28.0);
    const int L = 64;
    const auto frame = build_frame({}, L, CodeSpec::uncoded(), Modulation::BPSK);
    const auto block = synthesize_block(st, frame, gdb, 17);
    const auto s = chip_statistics(block.Y, st.a, st.c);
    const auto f1 = to_features(s.v, L, L), f0 = to_features(s.v, 2 * L, L);
    const double ang = axis_angle(f0, f1);
    CHECK(angle_diff(ang, st.phi) < 0.35);
    // projection of the cluster-mean difference on (cos phi, sin phi) is positive
    CHECK(std::cos(ang - st.phi) > 0.0);

    // estimated directions carry their own phase references; the axis moves by their difference
    const auto r = dpi_null_and_directions(partition_block(block, L, 1, 0), Modulation::BPSK);
    const auto se = chip_statistics(block.Y, r.est.a_hat, r.est.c_hat);
    const double alpha = std::arg(st.a.dot(r.est.a_hat)), beta = std::arg(st.c.dot(r.est.c_hat));
    const double ang_e = axis_angle(to_features(se.v, 2 * L, L), to_features(se.v, L, L));
    CHECK(angle_diff(ang_e, st.phi + alpha - beta) < 0.35);
}

TEST_CASE("Coherent statistic computed two ways")
{
    const auto st = channel_at(2);
    const auto b = synthesize_block(st, std::vector<std::int8_t>(500, 1), 25.0, 8);
    const CMatrix M = statistic_kernel(st.a, st.c, st.phi);
    const auto s = chip_statistics(b.Y, st.a, st.c);
    for (int i = 0; i < 500; ++i)
    {
        const double quad = std::real(b.Y.col(i).dot(M * b.Y.col(i)));
        const double lin = std::cos(st.phi) * s.v[i].real() + std::sin(st.phi) * s.v[i].imag();
        CHECK(std::abs(quad - lin) <= 1e-12 * std::max(1.0, std::abs(s.v[i])));
        CHECK(coherent_statistic(s.v[i], st.phi) == Approx(lin).epsilon(1e-12));
    }
}

TEST_CASE("Energy detector contract")
{
    CVector u(3);
    u << 0.0, cdouble(2.0, 0.0), cdouble(0.1, 0.1);
    CHECK(noncoherent_chips(u, 1.0, Modulation::OOK) == std::vector<std::int8_t>{0, 1, 0});
    CHECK_THROWS_AS(noncoherent_chips(u, 1.0, Modulation::BPSK), InvalidArgument);
    CHECK(noncoherent_chips(CVector::Zero(4), noncoherent_threshold(0.0), Modulation::OOK) ==
          std::vector<std::int8_t>(4, 0));
    CHECK_FALSE(variant_supports(ReceiverVariant::NoncoherentEnergy, Modulation::BPSK));
    CHECK_FALSE(variant_supports(ReceiverVariant::PhaseIgnoring, Modulation::OOK));
    CHECK(parse_variant("ml_lr") == ReceiverVariant::MlLr);
    CHECK_THROWS_AS(parse_variant("svm"), InvalidArgument);
    for (auto v : all_variants)
        CHECK(parse_variant(to_string(v)) == v);
}

TEST_CASE("Noiseless frames decode without error")
{
    const auto st = channel_at(2);
    const std::vector<ReceiverVariant> bpsk_exact{ReceiverVariant::MlLr, ReceiverVariant::GenieCoherent,
                                                  ReceiverVariant::EstimatedCoherent, ReceiverVariant::PhaseIgnoring};
    const std::vector<ReceiverVariant> ook_exact{ReceiverVariant::GenieCoherent, ReceiverVariant::EstimatedCoherent,
                                                 ReceiverVariant::NoncoherentEnergy};
    for (auto code : {CodeSpec::uncoded(), CodeSpec::hadamard(2), CodeSpec::simplex(3)})
        for (int L : {8, 64})
        {
            const auto b = run_trials(st, Modulation::BPSK, code, L, 20, 28.0, bpsk_exact, 5, 3, true);
            for (auto v : bpsk_exact)
            {
                INFO(to_string(v) << " L=" << L << " n=" << code.n());
                CHECK(b.at(v).bit_errors == 0);
                CHECK(b.at(v).chip_errors == 0);
            }
            const auto o = run_trials(st, Modulation::OOK, code, L, 20, 28.0, ook_exact, 5, 4, true);
            for (auto v : ook_exact)
            {
                INFO(to_string(v) << " L=" << L << " n=" << code.n());
                CHECK(o.at(v).bit_errors == 0);
            }
        }

    // Noiseless features have exponential magnitudes along rays, so boundaries that are not
    // anchored at the origin miss some of the chips whose ambient sample is nearly zero
    const std::vector<ReceiverVariant> ml{ReceiverVariant::MlLr, ReceiverVariant::MlLda, ReceiverVariant::MlKnn};
    for (auto m : {Modulation::BPSK, Modulation::OOK})
    {
        const auto r = run_trials(st, m, CodeSpec::uncoded(), 64, 100, 28.0, ml, 20, 5, true);
        for (auto v : ml)
        {
            INFO(to_string(v) << " " << to_string(m) << " chip error rate " << r.at(v).cer());
            CHECK(r.at(v).cer() < 0.25);
        }
    }
}

TEST_CASE("Decisions are invariant to a positive rescaling of the samples")
{
    const auto st = channel_at(2);
    for (auto m : {Modulation::BPSK, Modulation::OOK})
    {
        Rng rng(2);
        const auto frame = build_frame(random_bits(rng, 200), 64, CodeSpec::uncoded(), m);
        const auto block = synthesize_block(st, frame, model_db(st, 20.0), 44);
        SampleBlock scaled = block;
        scaled.Y *= 37.5;
        const Codebook book(frame.code);
        FrameDemodulator d1(block, frame, st, db_to_linear(block.gamma_db), book);
        FrameDemodulator d2(scaled, frame, st, db_to_linear(block.gamma_db), book);
        for (auto v : {ReceiverVariant::MlLr, ReceiverVariant::MlLda, ReceiverVariant::MlKnn,
                       ReceiverVariant::EstimatedCoherent, ReceiverVariant::PhaseIgnoring})
        {
            if (!variant_supports(v, m))
                continue;
            INFO(to_string(v));
            CHECK(d1.run(v).chip_decisions == d2.run(v).chip_decisions);
        }
    }
}

TEST_CASE("Rotating the phase offset rotates the feature axis")
{
    const auto base = channel_at(2);
    const int L = 256;
    const double gdb = model_db(base, 28.0);
    std::vector<double> bers;
    for (double delta : {0.0, 0.7, 2.0, -1.3})
    {
        const auto st = channel_from_directions(base.a, base.h, base.phi + delta);
        Rng rng(6);
        const auto frame = build_frame(random_bits(rng, 400), L, CodeSpec::uncoded(), Modulation::BPSK);
        const auto block = synthesize_block(st, frame, gdb, 66);
        const auto s = chip_statistics(block.Y, st.a, st.c);
        const double ang = axis_angle(to_features(s.v, 2 * L, L), to_features(s.v, L, L));
        CHECK(angle_diff(ang, base.phi + delta) < 0.2);
        bers.push_back(demodulate_frame(block, frame, st, db_to_linear(gdb), ReceiverVariant::MlLr).bit_errors / 400.0);
    }
    for (double b : bers)
        CHECK(std::abs(b - bers.front()) < 0.04);
}

TEST_CASE("Direction estimates improve with the preamble length")
{
    const auto st = channel_at(2);
    const double gdb = model_db(st, 20.0);
    double prev_a = 0.0, prev_c = 0.0;
    for (int L : {8, 34, 64, 256})
    {
        double sa = 0.0, sc = 0.0;
        const int trials = 300;
        for (int t = 0; t < trials; ++t)
        {
            const auto frame = build_frame({}, L, CodeSpec::uncoded(), Modulation::BPSK);
            const auto block = synthesize_block(st, frame, gdb, derive_seed(9, L, t));
            const auto r = dpi_null_and_directions(partition_block(block, L, 1, 0), Modulation::BPSK);
            sa += std::abs(r.est.a_hat.dot(st.a)) / trials;
            sc += std::abs(r.est.c_hat.dot(st.c)) / trials;
        }
        INFO("L=" << L << " |a^H a_hat|=" << sa << " |c^H c_hat|=" << sc);
        CHECK(sa > prev_a);
        CHECK(sc > prev_c);
        prev_a = sa;
        prev_c = sc;
    }
    CHECK(prev_a > 0.999);
    CHECK(prev_c > 0.95);
}

TEST_CASE("LR training error never exceeds chance")
{
    const auto st = channel_at(6);
    for (auto m : {Modulation::BPSK, Modulation::OOK})
        for (double ref_db : {-10.0, 0.0, 10.0})
            for (int t = 0; t < 40; ++t)
            {
                const int L = 34;
                const auto frame = build_frame({}, L, CodeSpec::uncoded(), m);
                const auto block = synthesize_block(st, frame, model_db(st, ref_db), derive_seed(12, t, int(ref_db)));
                const auto r = dpi_null_and_directions(partition_block(block, L, 1, 0), m);
                const auto s = chip_statistics(block.Y, r.est.a_hat, r.est.c_hat);
                const auto f1 = to_features(s.v, L, L), f0 = to_features(s.v, 2 * L, L);
                ClassifierOptions co;
                co.fit_intercept = m == Modulation::OOK;
                const auto model = train_classifier(ClassifierKind::LogisticRegression, f0, f1, co);
                int ok = 0;
                for (const auto &f : f0)
                    ok += !model.decide_class1(f);
                for (const auto &f : f1)
                    ok += model.decide_class1(f);
                INFO(to_string(m) << " " << ref_db);
                CHECK(ok >= L);
            }
}

TEST_CASE("Receiver ordering at the reference operating point")
{
    const auto st = channel_at(2);
    const int trials = 400, P = 100;
    const std::vector<ReceiverVariant> vb{ReceiverVariant::MlLr, ReceiverVariant::GenieCoherent,
                                          ReceiverVariant::PhaseIgnoring};
    const double gdb = model_db(st, 28.0);
    const auto b = run_trials(st, Modulation::BPSK, CodeSpec::uncoded(), 64, P, gdb, vb, trials, 21);
    const auto o = run_trials(st, Modulation::OOK, CodeSpec::uncoded(), 64, P, gdb, {ReceiverVariant::MlLr},
                              trials, 22);
    const double ml = b.at(ReceiverVariant::MlLr).ber(), genie = b.at(ReceiverVariant::GenieCoherent).ber(),
                 pi = b.at(ReceiverVariant::PhaseIgnoring).ber(), ook = o.at(ReceiverVariant::MlLr).ber();
    INFO("ml_lr " << ml << " genie " << genie << " phase_ignoring " << pi << " ook ml_lr " << ook);
    CHECK(genie <= ml);
    CHECK(genie <= pi);
    CHECK(ook > ml);
    // regression value from the calibration run
    const double n = double(trials) * P;
    CHECK(std::abs(ml - 0.062875) < 3.0 * oracle::binomial_sigma(0.062875, n));
}

TEST_CASE("Energy detector simulation matches the closed form")
{
    const auto st = channel_at(2);
    const int trials = 600, P = 200;

    // True c and true effective SNR: the assumptions of the closed form
    for (double ref_db : {10.0, 20.0, 28.0})
    {
        const double gdb = model_db(st, ref_db), k = db_to_linear(gdb) * st.eta2 * st.eta2;
        const double T = noncoherent_threshold(k);
        std::uint64_t errors = 0, n = 0;
        for (int t = 0; t < trials; ++t)
        {
            Rng rng(derive_seed(50, 1, t));
            const auto frame = build_frame(random_bits(rng, P), 64, CodeSpec::uncoded(), Modulation::OOK);
            const auto block = synthesize_block(st, frame, gdb, derive_seed(50, 2, t));
            const CVector u = (st.c.adjoint() * block.Y.rightCols(P)).transpose();
            const auto chips = noncoherent_chips(u, T, Modulation::OOK);
            for (int i = 0; i < P; ++i)
                errors += chips[i] != frame.chips[3 * 64 + i];
            n += P;
        }
        const double sim = double(errors) / n, theory = noncoherent_pe(k).p_e;
        INFO("ref " << ref_db << " dB: simulated " << sim << " closed form " << theory);
        CHECK(std::abs(sim - theory) < 3.0 * oracle::binomial_sigma(theory, double(n)));
    }

    // The full receiver estimates c from the +1 preamble and the effective SNR from its energy;
    // at 28 dB both estimates are good enough to land on the closed form
    const double gdb = model_db(st, 28.0);
    const auto r = run_trials(st, Modulation::OOK, CodeSpec::uncoded(), 64, P, gdb,
                              {ReceiverVariant::NoncoherentEnergy}, trials, 68);
    const double sim = r.at(ReceiverVariant::NoncoherentEnergy).ber();
    const double theory = noncoherent_pe(db_to_linear(gdb) * st.eta2 * st.eta2).p_e;
    INFO("estimated receiver: simulated " << sim << " closed form " << theory);
    CHECK(std::abs(sim - theory) < 3.0 * oracle::binomial_sigma(theory, double(trials) * P));
}
