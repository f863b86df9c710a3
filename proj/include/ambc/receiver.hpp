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

#ifndef AMBC_RECEIVER_HPP
#define AMBC_RECEIVER_HPP

#include "analytic.hpp"
#include "classifier.hpp"
#include "codec.hpp"
#include "linalg.hpp"
#include "phy.hpp"

#include <optional>

namespace ambc
{
    struct DirectionEstimates
    {
        CVector a_hat;
        CVector c_hat;
        PowerIterationResult a_info;
        PowerIterationResult c_info;
    };

    struct DpiResult
    {
        DirectionEstimates est;
        CMatrix residual; // (I - a_hat a_hat^H) [Yt | payload]
    };

    inline CMatrix orthogonal_projector(const CVector &a)
    {
        return CMatrix::Identity(a.size(), a.size()) - a * a.adjoint();
    }

    inline DpiResult dpi_null_and_directions(const BlockPartition &part, Modulation m,
                                             const PowerIterationOptions &opt = {})
    {
        DpiResult r;
        r.est.a_info = principal_direction(part.Y0(), opt);
        r.est.a_hat = r.est.a_info.vector;
        const CMatrix Pa = orthogonal_projector(r.est.a_hat);
        const CMatrix Yt = m == Modulation::BPSK ? CMatrix(Pa * part.Yt()) : CMatrix(Pa * part.Yt_plus());
        r.est.c_info = principal_direction(Yt, opt);
        // Power iteration on a projected covariance stays in the complement; re-project to drop rounding
        CVector c = r.est.c_info.vector;
        c -= r.est.a_hat * r.est.a_hat.dot(c);
        c.normalize();
        fix_phase(c);
        r.est.c_hat = c;
        r.residual = Pa * part.training_and_payload();
        return r;
    }

    struct ChipStatistics
    {
        CVector s_hat; // a_hat^H y
        CVector u;     // c_hat^H y
        CVector v;     // conj(s_hat) u
    };

    template <typename Derived>
    ChipStatistics chip_statistics(const Eigen::MatrixBase<Derived> &Y, const CVector &a_hat, const CVector &c_hat)
    {
        ChipStatistics s;
        s.s_hat = (a_hat.adjoint() * Y).transpose();
        s.u = (c_hat.adjoint() * Y).transpose();
        s.v = s.s_hat.conjugate().cwiseProduct(s.u);
        return s;
    }

    inline std::vector<ChipFeature> to_features(const CVector &v, Eigen::Index offset, Eigen::Index count)
    {
        std::vector<ChipFeature> f(count);
        for (Eigen::Index i = 0; i < count; ++i)
            f[i] = {v[offset + i].real(), v[offset + i].imag()};
        return f;
    }

    template <typename Derived>
    std::vector<ChipFeature> chip_features(const Eigen::MatrixBase<Derived> &Y, const CVector &a_hat,
                                           const CVector &c_hat)
    {
        const auto s = chip_statistics(Y, a_hat, c_hat);
        return to_features(s.v, 0, s.v.size());
    }

    // zeta = Re{e^{-j phi} y^H a c^H y} = Re{e^{-j phi} v}
    inline double coherent_statistic(cdouble v, double phi)
    {
        return std::real(std::polar(1.0, -phi) * v);
    }

    inline std::vector<std::int8_t> noncoherent_chips(const CVector &u, double T_h, Modulation m)
    {
        require(m == Modulation::OOK, "the energy detector needs OOK; its threshold diverges for BPSK");
        require(T_h >= 0.0, "threshold must be non-negative");
        std::vector<std::int8_t> out(u.size());
        for (Eigen::Index i = 0; i < u.size(); ++i)
            out[i] = std::norm(u[i]) > T_h ? 1 : 0;
        return out;
    }

    // Coherent decisions from zeta with thresholds computed by the analytic module
    inline std::vector<std::int8_t> coherent_chips(const std::vector<double> &zeta, const Thresholds &t, Modulation m)
    {
        std::vector<std::int8_t> out(zeta.size());
        const auto c0 = std::int8_t(chip_x0(m)), c1 = std::int8_t(chip_x1(m));
        for (std::size_t i = 0; i < zeta.size(); ++i)
            out[i] = t.decide_x1(zeta[i]) ? c1 : c0;
        return out;
    }

    // Genie coherent receiver on the given columns: true directions, true phi, model gamma
    template <typename Derived>
    std::vector<std::int8_t> genie_coherent_chips(const Eigen::MatrixBase<Derived> &Y, const ChannelState &chan,
                                                  double gamma, Modulation m)
    {
        const auto s = chip_statistics(Y, chan.a, chan.c);
        std::vector<double> z(s.v.size());
        for (Eigen::Index i = 0; i < s.v.size(); ++i)
            z[i] = coherent_statistic(s.v[i], chan.phi);
        const auto t = coherent_thresholds(conditional_eigenvalues(chan, gamma, chip_x0(m)),
                                           conditional_eigenvalues(chan, gamma, chip_x1(m)));
        return coherent_chips(z, t, m);
    }

    // Eigenvalues of the rank-2 form zeta = y^H M y under a measured covariance R, with M built on the
    // orthonormal pair (a, c)
    inline std::optional<EigPair> measured_eigenvalues(const CMatrix &R, const CVector &a, const CVector &c,
                                                       double phi, double x)
    {
        CMatrix Q(a.size(), 2);
        Q.col(0) = a;
        Q.col(1) = c;
        const Eigen::Matrix2cd S = Q.adjoint() * R * Q;
        const cdouble e = std::polar(1.0, phi);
        const double tr = std::real(e * S(0, 1));
        const double det = -0.25 * std::real(S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0));
        if (!(det < 0.0))
            return std::nullopt;
        const auto [l1, l2] = real_quadratic_roots(tr, det);
        return EigPair{l1, l2, x};
    }

    enum class ReceiverVariant
    {
        MlLr,
        MlLda,
        MlKnn,
        GenieCoherent,
        EstimatedCoherent,
        PhaseIgnoring,
        NoncoherentEnergy
    };

    inline constexpr ReceiverVariant all_variants[] = {
        ReceiverVariant::MlLr,          ReceiverVariant::MlLda,         ReceiverVariant::MlKnn,
        ReceiverVariant::GenieCoherent, ReceiverVariant::EstimatedCoherent, ReceiverVariant::PhaseIgnoring,
        ReceiverVariant::NoncoherentEnergy};

    inline std::string_view to_string(ReceiverVariant v)
    {
        switch (v)
        {
        case ReceiverVariant::MlLr:
            return "ml_lr";
        case ReceiverVariant::MlLda:
            return "ml_lda";
        case ReceiverVariant::MlKnn:
            return "ml_knn";
        case ReceiverVariant::GenieCoherent:
            return "genie_coherent";
        case ReceiverVariant::EstimatedCoherent:
            return "estimated_coherent";
        case ReceiverVariant::PhaseIgnoring:
            return "phase_ignoring";
        default:
            return "noncoherent_energy";
        }
    }

    inline ReceiverVariant parse_variant(std::string_view s)
    {
        for (auto v : all_variants)
            if (to_string(v) == s)
                return v;
        throw InvalidArgument("unknown receiver variant '" + std::string(s) + "'");
    }

    inline bool variant_supports(ReceiverVariant v, Modulation m)
    {
        if (v == ReceiverVariant::PhaseIgnoring)
            return m == Modulation::BPSK;
        if (v == ReceiverVariant::NoncoherentEnergy)
            return m == Modulation::OOK;
        return true;
    }

    enum class InterceptPolicy
    {
        Auto,   // BPSK through the origin, OOK with a fitted intercept
        Always,
        Never
    };

    struct ReceiverOptions
    {
        ClassifierOptions classifier;
        InterceptPolicy intercept = InterceptPolicy::Auto;
        PowerIterationOptions power;
    };

    struct FrameOutcome
    {
        std::vector<std::int8_t> chip_decisions; // payload only
        std::vector<std::uint8_t> bits;
        std::vector<std::size_t> codeword_indices;
        std::uint64_t bit_errors = 0, n_bits = 0;
        std::uint64_t symbol_errors = 0, n_symbols = 0;
        std::uint64_t chip_errors = 0, n_chips = 0;
    };

    // Runs every receiver variant on one block, sharing the preamble processing between them.
    class FrameDemodulator
    {
    public:
        FrameDemodulator(const SampleBlock &block, const Frame &frame, const ChannelState &truth, double gamma,
                         const Codebook &book, ReceiverOptions opt = {})
            : block_(block), frame_(frame), truth_(truth), gamma_(gamma), book_(book), opt_(std::move(opt)),
              part_(partition_block(block, frame.preamble_len, frame.n(), frame.payload_symbols))
        {
            require(book.code().kind == frame.code.kind && book.code().r == frame.code.r,
                    "codebook does not match the frame code");
        }

        FrameOutcome run(ReceiverVariant v)
        {
            require(variant_supports(v, frame_.modulation),
                    std::string(to_string(v)) + " does not support " + std::string(to_string(frame_.modulation)));
            std::vector<std::int8_t> chips;
            switch (v)
            {
            case ReceiverVariant::MlLr:
                chips = ml_chips(ClassifierKind::LogisticRegression);
                break;
            case ReceiverVariant::MlLda:
                chips = ml_chips(ClassifierKind::LDA);
                break;
            case ReceiverVariant::MlKnn:
                chips = ml_chips(ClassifierKind::KNN);
                break;
            case ReceiverVariant::GenieCoherent:
                chips = genie_chips();
                break;
            case ReceiverVariant::EstimatedCoherent:
                chips = estimated_coherent_chips();
                break;
            case ReceiverVariant::PhaseIgnoring:
                chips = phase_ignoring_chips();
                break;
            case ReceiverVariant::NoncoherentEnergy:
                chips = energy_chips();
                break;
            }
            return score(std::move(chips));
        }

        const DpiResult &dpi()
        {
            if (!dpi_)
                dpi_ = dpi_null_and_directions(part_, frame_.modulation, opt_.power);
            return *dpi_;
        }

        const ChipStatistics &estimated_statistics()
        {
            if (!est_stats_)
                est_stats_ = chip_statistics(block_.Y, dpi().est.a_hat, dpi().est.c_hat);
            return *est_stats_;
        }

        const ChipStatistics &genie_statistics()
        {
            if (!genie_stats_)
                genie_stats_ = chip_statistics(block_.Y, truth_.a, truth_.c);
            return *genie_stats_;
        }

    private:
        int L() const { return frame_.preamble_len; }
        int payload_begin() const { return 3 * frame_.preamble_len; }
        int payload_len() const { return frame_.n() * frame_.payload_symbols; }
        bool noiseless() const { return block_.noise_variance == 0.0; }

        // Column offset of the preamble block carrying x0 chips used for training/estimation
        int x0_block() const { return 2 * L(); }

        std::vector<std::int8_t> ml_chips(ClassifierKind kind)
        {
            const auto &s = estimated_statistics();
            auto f1 = to_features(s.v, L(), L());
            auto f0 = to_features(s.v, x0_block(), L());
            ClassifierOptions co = opt_.classifier;
            if (kind == ClassifierKind::LogisticRegression)
                co.fit_intercept = opt_.intercept == InterceptPolicy::Always ||
                                   (opt_.intercept == InterceptPolicy::Auto && frame_.modulation == Modulation::OOK);
            const auto model = train_classifier(kind, f0, f1, co);
            return predict_chips(model, to_features(s.v, payload_begin(), payload_len()), frame_.modulation);
        }

        std::vector<double> zeta_payload(const ChipStatistics &s) const
        {
            std::vector<double> z(payload_len());
            for (int i = 0; i < payload_len(); ++i)
                z[i] = coherent_statistic(s.v[payload_begin() + i], truth_.phi);
            return z;
        }

        // Noiseless blocks: x0 = 0 gives zeta = 0 up to rounding, so decide against a tiny relative level
        std::vector<std::int8_t> sign_chips(const std::vector<double> &z, double level) const
        {
            const auto c0 = std::int8_t(chip_x0(frame_.modulation)), c1 = std::int8_t(chip_x1(frame_.modulation));
            std::vector<std::int8_t> out(z.size());
            for (std::size_t i = 0; i < z.size(); ++i)
                out[i] = z[i] > level ? c1 : c0;
            return out;
        }

        double noiseless_level(const ChipStatistics &s) const
        {
            if (frame_.modulation == Modulation::BPSK)
                return 0.0;
            double m = 0.0;
            for (int i = 0; i < L(); ++i)
                m += std::abs(s.v[L() + i]);
            return 1e-9 * m / L();
        }

        std::vector<std::int8_t> genie_chips()
        {
            const auto &s = genie_statistics();
            const auto z = zeta_payload(s);
            if (noiseless())
                return sign_chips(z, noiseless_level(s));
            const auto t = coherent_thresholds(conditional_eigenvalues(truth_, gamma_, chip_x0(frame_.modulation)),
                                               conditional_eigenvalues(truth_, gamma_, chip_x1(frame_.modulation)));
            return coherent_chips(z, t, frame_.modulation);
        }

        // Estimated directions rotated onto the reference phase of the true ones (known-phase receiver).
        // Eigenvalues come from the preamble sample covariances.
        std::vector<std::int8_t> estimated_coherent_chips()
        {
            const auto &d = dpi().est;
            auto align = [](const CVector &est, const CVector &ref) {
                const cdouble p = ref.dot(est);
                return std::abs(p) > 0.0 ? CVector(est * (std::conj(p) / std::abs(p))) : est;
            };
            const CVector a = align(d.a_hat, truth_.a), c = align(d.c_hat, truth_.c);
            const auto s = chip_statistics(block_.Y, a, c);
            const auto z = zeta_payload(s);
            if (noiseless())
                return sign_chips(z, noiseless_level(s));

            const CMatrix R1 = sample_covariance(block_.Y.middleCols(L(), L()));
            const CMatrix R0 = frame_.modulation == Modulation::BPSK
                                   ? sample_covariance(block_.Y.middleCols(2 * L(), L()))
                                   : CMatrix(0.5 * (sample_covariance(block_.Y.middleCols(0, L())) +
                                                    sample_covariance(block_.Y.middleCols(2 * L(), L()))));
            const auto e0 = measured_eigenvalues(R0, a, c, truth_.phi, chip_x0(frame_.modulation));
            const auto e1 = measured_eigenvalues(R1, a, c, truth_.phi, chip_x1(frame_.modulation));
            if (!e0 || !e1)
                return sign_chips(z, 0.0);
            return coherent_chips(z, coherent_thresholds(*e0, *e1), frame_.modulation);
        }

        // Re{v} against zero with genie directions; polarity learned from the +1/-1 preambles
        std::vector<std::int8_t> phase_ignoring_chips()
        {
            const auto &s = genie_statistics();
            double corr = 0.0;
            for (int i = 0; i < L(); ++i)
                corr += s.v[L() + i].real() - s.v[2 * L() + i].real();
            const double pol = corr >= 0.0 ? 1.0 : -1.0;
            std::vector<double> z(payload_len());
            for (int i = 0; i < payload_len(); ++i)
                z[i] = pol * s.v[payload_begin() + i].real();
            return sign_chips(z, 0.0);
        }

        std::vector<std::int8_t> energy_chips()
        {
            const auto &s = estimated_statistics();
            double mean_plus = 0.0;
            for (int i = 0; i < L(); ++i)
                mean_plus += std::norm(s.u[L() + i]);
            mean_plus /= L();
            const double T = noiseless() ? 1e-9 * mean_plus
                                         : noncoherent_threshold(std::max(mean_plus - 1.0, 1e-6));
            return noncoherent_chips(s.u.segment(payload_begin(), payload_len()), T, frame_.modulation);
        }

        FrameOutcome score(std::vector<std::int8_t> chips) const
        {
            FrameOutcome o;
            const auto dec = decode_symbols(chips, book_, frame_.modulation);
            o.n_chips = chips.size();
            for (std::size_t i = 0; i < chips.size(); ++i)
                o.chip_errors += chips[i] != frame_.chips[payload_begin() + i];
            o.n_bits = frame_.source_bits.size();
            for (std::size_t i = 0; i < dec.bits.size(); ++i)
                o.bit_errors += dec.bits[i] != frame_.source_bits[i];
            const int k = frame_.code.k();
            o.n_symbols = dec.indices.size();
            for (std::size_t p = 0; p < dec.indices.size(); ++p)
                o.symbol_errors += dec.indices[p] != Codebook::tuple_index(&frame_.source_bits[p * k], k);
            o.chip_decisions = std::move(chips);
            o.bits = dec.bits;
            o.codeword_indices = dec.indices;
            return o;
        }

        const SampleBlock &block_;
        const Frame &frame_;
        const ChannelState &truth_;
        double gamma_;
        const Codebook &book_;
        ReceiverOptions opt_;
        BlockPartition part_;
        std::optional<DpiResult> dpi_;
        std::optional<ChipStatistics> est_stats_, genie_stats_;
    };

    inline FrameOutcome demodulate_frame(const SampleBlock &block, const Frame &frame, const ChannelState &truth,
                                         double gamma, ReceiverVariant v, const ReceiverOptions &opt = {})
    {
        const Codebook book(frame.code);
        FrameDemodulator d(block, frame, truth, gamma, book, opt);
        return d.run(v);
    }
}

#endif
