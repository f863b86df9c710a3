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

#ifndef AMBC_ANALYTIC_HPP
#define AMBC_ANALYTIC_HPP

#include "geometry.hpp"
#include "linalg.hpp"
#include "random.hpp"

#include <limits>
#include <vector>

namespace ambc
{
    // E{y y^H | x} = gamma g g^H + I with g = (1 + x e^{j phi} eta1) a + x e^{j phi} eta2 c
    inline CMatrix conditional_covariance(const ChannelState &st, double gamma, double x)
    {
        const cdouble rot = std::polar(1.0, st.phi);
        const cdouble alpha = 1.0 + x * rot * st.eta1;
        const cdouble beta = x * rot * st.eta2;
        const CMatrix aa = st.a * st.a.adjoint();
        const CMatrix ac = st.a * st.c.adjoint();
        const CMatrix cc = st.c * st.c.adjoint();
        CMatrix R = gamma * (std::norm(alpha) * aa + alpha * std::conj(beta) * ac +
                             beta * std::conj(alpha) * ac.adjoint() + std::norm(beta) * cc);
        R += CMatrix::Identity(st.n_r(), st.n_r());
        return R;
    }

    // Quadratic-form kernel of zeta = y^H M y
    inline CMatrix statistic_kernel(const CVector &a, const CVector &c, double phi)
    {
        const cdouble e = std::polar(1.0, phi);
        return 0.5 * (std::conj(e) * a * c.adjoint() + e * c * a.adjoint());
    }

    struct EigenParts
    {
        double epsilon = 0.0;
        double A = 0.0;
    };

    // A uses the conjugate-pair form of the cross term; 2 Re{z} is the same number
    inline EigenParts eigen_parts(const ChannelState &st, double gamma, double x)
    {
        const cdouble rot = std::polar(1.0, st.phi);
        const double x2 = x * x;
        EigenParts p;
        p.epsilon = std::real(gamma / 2.0 * st.eta2 * (rot * st.eta1 * x2 + x));
        const cdouble z = rot * st.eta1 * x;
        const double cross = std::real(z + std::conj(z));
        p.A = gamma / 4.0 * (1.0 + st.delta * x2 + cross) + 0.25;
        return p;
    }

    enum class EigenMode
    {
        Exact,
        Approximate
    };

    struct EigPair
    {
        double lambda1 = 0.0; // < 0
        double lambda2 = 0.0; // > 0
        double x = 0.0;       // hypothesis chip
    };

    inline EigPair conditional_eigenvalues(const ChannelState &st, double gamma, double x,
                                           EigenMode mode = EigenMode::Exact)
    {
        require(gamma >= 0.0 && std::isfinite(gamma), "gamma must be finite and >= 0");
        EigPair e;
        e.x = x;
        if (mode == EigenMode::Exact)
        {
            const auto p = eigen_parts(st, gamma, x);
            const double r = std::sqrt(p.epsilon * p.epsilon + p.A);
            // lambda1 lambda2 = -A; the product form avoids cancellation in the smaller root
            if (p.epsilon >= 0.0)
            {
                e.lambda2 = p.epsilon + r;
                e.lambda1 = -p.A / e.lambda2;
            }
            else
            {
                e.lambda1 = p.epsilon - r;
                e.lambda2 = -p.A / e.lambda1;
            }
        }
        else
        {
            const double m = gamma / 2.0 * st.eta2 * x;
            e.lambda1 = m - std::sqrt(gamma) / 2.0;
            e.lambda2 = m + std::sqrt(gamma) / 2.0;
        }
        return e;
    }

    // Sign convention for the ALD mean. Derived: E{zeta} = lambda1 + lambda2 (= trace of R M), pinned by
    // Monte Carlo. Negated: the opposite sign, kept for comparison.
    enum class MomentConvention
    {
        Derived,
        Negated
    };

    // Law of lambda2 E2 + lambda1 E1 with E1, E2 unit exponentials
    class Ald
    {
    public:
        Ald(double lambda1, double lambda2, MomentConvention conv = MomentConvention::Derived)
            : l1_(lambda1), l2_(lambda2), conv_(conv)
        {
            require(lambda1 < 0.0 && lambda2 > 0.0, "ALD needs lambda1 < 0 < lambda2");
        }

        double lambda1() const { return l1_; }
        double lambda2() const { return l2_; }
        MomentConvention convention() const { return conv_; }

        double pdf(double z) const
        {
            const double d = l2_ - l1_;
            return z < 0.0 ? std::exp(-z / l1_) / d : std::exp(-z / l2_) / d;
        }

        double cdf(double z) const
        {
            if (z == -std::numeric_limits<double>::infinity())
                return 0.0;
            if (z == std::numeric_limits<double>::infinity())
                return 1.0;
            const double d = l2_ - l1_;
            return z < 0.0 ? -l1_ / d * std::exp(-z / l1_) : 1.0 - l2_ / d * std::exp(-z / l2_);
        }

        double mean() const { return conv_ == MomentConvention::Derived ? l1_ + l2_ : -(l1_ + l2_); }
        double variance() const { return l1_ * l1_ + l2_ * l2_; }

        double sample(Rng &rng) const
        {
            std::exponential_distribution<double> ex(1.0);
            const double e1 = ex(rng.engine());
            const double e2 = ex(rng.engine());
            return l2_ * e2 + l1_ * e1;
        }

    private:
        double l1_, l2_;
        MomentConvention conv_;
    };

    enum class ThresholdCase
    {
        Case1,      // single boundary at T1 on the negative half line
        Case2,      // single boundary at T2 on the positive half line
        Case3,      // x0 decided between T1 and T2
        Mirrored,   // x1 decided between T1 and T2
        Inverted,   // both eigenvalues larger under x0
        Degenerate  // hypotheses indistinguishable
    };

    inline std::string_view to_string(ThresholdCase c)
    {
        switch (c)
        {
        case ThresholdCase::Case1:
            return "case1";
        case ThresholdCase::Case2:
            return "case2";
        case ThresholdCase::Case3:
            return "case3";
        case ThresholdCase::Mirrored:
            return "mirrored";
        case ThresholdCase::Inverted:
            return "inverted";
        default:
            return "degenerate";
        }
    }

    struct Thresholds
    {
        // Zero crossings of the log-likelihood ratio on each half line, by the closed-form T1/T2
        // expressions. Infinite when the half-line slope vanishes. Only breakpoints that fall on
        // their own half line are active.
        double t1 = 0.0;
        double t2 = 0.0;
        ThresholdCase kind = ThresholdCase::Degenerate;
        EigPair eig0, eig1;

        std::vector<double> breakpoints;  // ascending, active
        std::vector<std::uint8_t> decide; // per interval (breakpoints.size() + 1): 1 = x1

        bool decide_x1(double zeta) const
        {
            std::size_t j = 0;
            while (j < breakpoints.size() && zeta > breakpoints[j])
                ++j;
            return decide[j] != 0;
        }
    };

    // ln f1(z) - ln f0(z)
    inline double log_likelihood_ratio(double z, const EigPair &e0, const EigPair &e1)
    {
        const double d0 = e0.lambda2 - e0.lambda1, d1 = e1.lambda2 - e1.lambda1;
        const double base = std::log(d0 / d1);
        if (z < 0.0)
            return base + z * (1.0 / e0.lambda1 - 1.0 / e1.lambda1);
        return base + z * (1.0 / e0.lambda2 - 1.0 / e1.lambda2);
    }

    inline Thresholds coherent_thresholds(const EigPair &e0, const EigPair &e1)
    {
        require(e0.lambda1 < 0.0 && e0.lambda2 > 0.0 && e1.lambda1 < 0.0 && e1.lambda2 > 0.0,
                "eigen pairs must satisfy lambda1 < 0 < lambda2");
        Thresholds t;
        t.eig0 = e0;
        t.eig1 = e1;
        const double diff1 = e0.lambda1 - e1.lambda1;
        const double diff2 = e0.lambda2 - e1.lambda2;
        const double lnr = std::log((e0.lambda2 - e0.lambda1) / (e1.lambda2 - e1.lambda1));
        const double inf = std::numeric_limits<double>::infinity();
        t.t1 = diff1 != 0.0 ? e0.lambda1 * e1.lambda1 / diff1 * lnr : (lnr >= 0.0 ? -inf : inf);
        t.t2 = diff2 != 0.0 ? e0.lambda2 * e1.lambda2 / diff2 * lnr : (lnr >= 0.0 ? inf : -inf);

        if (diff1 == 0.0 && diff2 == 0.0)
            t.kind = ThresholdCase::Degenerate;
        else if (diff1 == 0.0 || diff2 == 0.0)
            t.kind = ThresholdCase::Case1;
        else if (diff1 < 0.0 && diff2 < 0.0)
            t.kind = diff1 <= diff2 ? ThresholdCase::Case1 : ThresholdCase::Case2;
        else if (diff1 > 0.0 && diff2 < 0.0)
            t.kind = ThresholdCase::Case3;
        else if (diff1 < 0.0 && diff2 > 0.0)
            t.kind = ThresholdCase::Mirrored;
        else
            t.kind = ThresholdCase::Inverted;

        if (t.kind == ThresholdCase::Degenerate)
        {
            t.decide = {0};
            return t;
        }
        if (std::isfinite(t.t1) && t.t1 < 0.0)
            t.breakpoints.push_back(t.t1);
        t.breakpoints.push_back(0.0);
        if (std::isfinite(t.t2) && t.t2 >= 0.0)
            t.breakpoints.push_back(t.t2);

        // Decision per interval from the LLR sign at an interior point
        const auto &b = t.breakpoints;
        for (std::size_t j = 0; j <= b.size(); ++j)
        {
            double probe;
            if (j == 0)
                probe = b.front() - 1.0 - std::abs(b.front());
            else if (j == b.size())
                probe = b.back() + 1.0 + std::abs(b.back());
            else
                probe = 0.5 * (b[j - 1] + b[j]);
            t.decide.push_back(log_likelihood_ratio(probe, e0, e1) > 0.0 ? 1 : 0);
        }
        return t;
    }

    enum class ReceiverKind
    {
        CoherentKnownPhase,
        NonCoherent
    };

    struct PeResult
    {
        double p_e = 0.5;
        ReceiverKind receiver = ReceiverKind::CoherentKnownPhase;
        ThresholdCase kind = ThresholdCase::Degenerate;
        double gamma = 0.0, delta = 0.0, eta2 = 0.0, phi = 0.0;
        cdouble eta1 = 0.0;
        double x0 = 0.0, x1 = 0.0;
        double threshold = 0.0; // T_h for the non-coherent receiver
    };

    // Bayes error of a threshold rule for two ALD hypotheses with equal priors
    inline double rule_error(const Thresholds &t)
    {
        if (t.kind == ThresholdCase::Degenerate)
            return 0.5;
        const Ald f0(t.eig0.lambda1, t.eig0.lambda2), f1(t.eig1.lambda1, t.eig1.lambda2);
        const double inf = std::numeric_limits<double>::infinity();
        double miss = 0.0, false_alarm = 0.0;
        for (std::size_t j = 0; j <= t.breakpoints.size(); ++j)
        {
            const double lo = j == 0 ? -inf : t.breakpoints[j - 1];
            const double hi = j == t.breakpoints.size() ? inf : t.breakpoints[j];
            if (t.decide[j])
                false_alarm += f0.cdf(hi) - f0.cdf(lo);
            else
                miss += f1.cdf(hi) - f1.cdf(lo);
        }
        return std::clamp(0.5 * (false_alarm + miss), 0.0, 0.5);
    }

    inline PeResult coherent_pe(const ChannelState &st, double gamma, double x0, double x1,
                                EigenMode mode = EigenMode::Exact)
    {
        PeResult r;
        r.receiver = ReceiverKind::CoherentKnownPhase;
        r.gamma = gamma;
        r.delta = st.delta;
        r.eta1 = st.eta1;
        r.eta2 = st.eta2;
        r.phi = st.phi;
        r.x0 = x0;
        r.x1 = x1;
        if (gamma <= 0.0)
            return r;
        const auto t = coherent_thresholds(conditional_eigenvalues(st, gamma, x0, mode),
                                           conditional_eigenvalues(st, gamma, x1, mode));
        r.kind = t.kind;
        r.p_e = rule_error(t);
        return r;
    }

    inline double upper_gamma_tail_s1(double x) { return 1.0 - std::exp(-x); }

    struct NoncoherentResult
    {
        double threshold = 1.0; // T_h
        double p_e = 0.5;
        double p_false_alarm = 0.0;
        double p_miss = 0.0;
    };

    inline double noncoherent_threshold(double gamma_eff)
    {
        require(gamma_eff >= 0.0 && !std::isnan(gamma_eff), "effective SNR must be >= 0");
        if (gamma_eff < 1e-12)
            return 1.0 + gamma_eff / 2.0; // series of (1 + 1/k) ln(1 + k)
        return (1.0 + 1.0 / gamma_eff) * std::log1p(gamma_eff);
    }

    // Energy detector on |u|^2 with |u|^2 ~ Exp(1) under x=0 and Exp(1 + gamma_eff) under x=1
    inline NoncoherentResult noncoherent_pe(double gamma_eff)
    {
        NoncoherentResult r;
        r.threshold = noncoherent_threshold(gamma_eff);
        r.p_false_alarm = 1.0 - upper_gamma_tail_s1(r.threshold);
        r.p_miss = upper_gamma_tail_s1(r.threshold / (gamma_eff + 1.0));
        r.p_e = 0.5 * (1.0 + upper_gamma_tail_s1(r.threshold / (gamma_eff + 1.0)) -
                       upper_gamma_tail_s1(r.threshold));
        return r;
    }
}

#endif
