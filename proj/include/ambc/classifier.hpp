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

#ifndef AMBC_CLASSIFIER_HPP
#define AMBC_CLASSIFIER_HPP

#include "core.hpp"

#include <algorithm>
#include <vector>

namespace ambc
{
    struct ChipFeature
    {
        double re = 0.0;
        double im = 0.0;
    };

    enum class ClassifierKind
    {
        LogisticRegression,
        LDA,
        KNN
    };

    struct ClassifierOptions
    {
        bool fit_intercept = true;
        int max_iterations = 50;       // IRLS
        double gradient_tolerance = 1e-8;
        double l2 = 1e-6;
        int k = 23;                    // kNN
        double lda_ridge = 1e-9;
    };

    struct ClassifierModel
    {
        ClassifierKind kind = ClassifierKind::LogisticRegression;

        // Linear rule: class 1 iff w_re * re + w_im * im + bias > 0 (LR and LDA)
        double w_re = 0.0, w_im = 0.0, bias = 0.0;

        // LR diagnostics
        int iterations = 0;
        bool converged = false;
        bool fallback = false; // fitted rule was worse than chance on the training set

        // LDA
        Eigen::Vector2d mean0 = Eigen::Vector2d::Zero(), mean1 = Eigen::Vector2d::Zero();
        Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
        bool ridge_added = false;

        // kNN
        std::vector<ChipFeature> points;
        std::vector<std::uint8_t> labels;
        int k = 23;

        double score(const ChipFeature &f) const { return w_re * f.re + w_im * f.im + bias; }
        bool decide_class1(const ChipFeature &f) const;
    };

    namespace detail
    {
        inline double sigmoid(double t)
        {
            if (t >= 0.0)
                return 1.0 / (1.0 + std::exp(-t));
            const double e = std::exp(t);
            return e / (1.0 + e);
        }

        inline double feature_scale(const std::vector<ChipFeature> &a, const std::vector<ChipFeature> &b)
        {
            double s = 0.0;
            for (const auto &f : a)
                s += std::hypot(f.re, f.im);
            for (const auto &f : b)
                s += std::hypot(f.re, f.im);
            s /= double(a.size() + b.size());
            return s > 0.0 && std::isfinite(s) ? s : 1.0;
        }
    }

    // L2-regularized logistic regression by IRLS on features divided by their mean norm
    inline ClassifierModel train_logistic(const std::vector<ChipFeature> &f0, const std::vector<ChipFeature> &f1,
                                          const ClassifierOptions &opt)
    {
        const double s = detail::feature_scale(f0, f1);
        const int p = opt.fit_intercept ? 3 : 2;
        const std::size_t n = f0.size() + f1.size();
        Eigen::MatrixXd X(n, p);
        Eigen::VectorXd y(n);
        std::size_t r = 0;
        for (int cls = 0; cls < 2; ++cls)
            for (const auto &f : cls ? f1 : f0)
            {
                X(r, 0) = f.re / s;
                X(r, 1) = f.im / s;
                if (p == 3)
                    X(r, 2) = 1.0;
                y[r++] = cls;
            }

        Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
        ClassifierModel m;
        m.kind = ClassifierKind::LogisticRegression;
        for (int it = 1; it <= opt.max_iterations; ++it)
        {
            const Eigen::VectorXd t = X * theta;
            Eigen::VectorXd mu(n), wts(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                mu[i] = detail::sigmoid(t[i]);
                wts[i] = mu[i] * (1.0 - mu[i]);
            }
            const Eigen::VectorXd grad = X.transpose() * (mu - y) + opt.l2 * theta;
            m.iterations = it;
            if (grad.cwiseAbs().maxCoeff() < opt.gradient_tolerance)
            {
                m.converged = true;
                break;
            }
            Eigen::MatrixXd H = X.transpose() * wts.asDiagonal() * X;
            H.diagonal().array() += opt.l2;
            theta -= H.ldlt().solve(grad);
            if (!theta.allFinite())
            {
                theta.setZero();
                break;
            }
        }
        m.w_re = theta[0] / s;
        m.w_im = theta[1] / s;
        m.bias = p == 3 ? theta[2] : 0.0;

        // A likelihood maximum can still misclassify more than half of its own training set when
        // the classes overlap; fall back to the prior-only rule, which does no worse than chance
        std::size_t errors = 0;
        for (std::size_t i = 0; i < n; ++i)
            errors += ((X.row(i).head(2).dot(theta.head(2)) + (p == 3 ? theta[2] : 0.0)) > 0.0) != (y[i] > 0.5);
        if (2 * errors > n)
        {
            m.w_re = m.w_im = 0.0;
            m.bias = p == 3 ? std::log(double(f1.size()) / double(f0.size())) : 0.0;
            m.fallback = true;
        }
        return m;
    }

    inline ClassifierModel train_lda(const std::vector<ChipFeature> &f0, const std::vector<ChipFeature> &f1,
                                     const ClassifierOptions &opt)
    {
        ClassifierModel m;
        m.kind = ClassifierKind::LDA;
        auto mean = [](const std::vector<ChipFeature> &f) {
            Eigen::Vector2d mu = Eigen::Vector2d::Zero();
            for (const auto &x : f)
                mu += Eigen::Vector2d(x.re, x.im);
            return Eigen::Vector2d(mu / double(f.size()));
        };
        m.mean0 = mean(f0);
        m.mean1 = mean(f1);
        Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
        for (int cls = 0; cls < 2; ++cls)
            for (const auto &x : cls ? f1 : f0)
            {
                const Eigen::Vector2d d = Eigen::Vector2d(x.re, x.im) - (cls ? m.mean1 : m.mean0);
                S += d * d.transpose();
            }
        const double dof = std::max<double>(double(f0.size() + f1.size()) - 2.0, 1.0);
        S /= dof;
        const double tr = S.trace();
        if (!(S.determinant() > 1e-12 * tr * tr) || tr <= 0.0)
        {
            S.diagonal().array() += opt.lda_ridge;
            m.ridge_added = true;
        }
        m.covariance = S;
        const Eigen::Vector2d w = S.ldlt().solve(m.mean1 - m.mean0);
        m.w_re = w[0];
        m.w_im = w[1];
        m.bias = -0.5 * w.dot(m.mean0 + m.mean1) + std::log(double(f1.size()) / double(f0.size()));
        return m;
    }

    inline ClassifierModel train_knn(const std::vector<ChipFeature> &f0, const std::vector<ChipFeature> &f1,
                                     const ClassifierOptions &opt)
    {
        require(opt.k >= 1, "kNN needs k >= 1");
        ClassifierModel m;
        m.kind = ClassifierKind::KNN;
        m.k = opt.k;
        m.points.reserve(f0.size() + f1.size());
        for (const auto &f : f0)
        {
            m.points.push_back(f);
            m.labels.push_back(0);
        }
        for (const auto &f : f1)
        {
            m.points.push_back(f);
            m.labels.push_back(1);
        }
        return m;
    }

    inline ClassifierModel train_classifier(ClassifierKind kind, const std::vector<ChipFeature> &f0,
                                            const std::vector<ChipFeature> &f1, const ClassifierOptions &opt = {})
    {
        require(!f0.empty() && !f1.empty(), "both training classes must be non-empty");
        switch (kind)
        {
        case ClassifierKind::LogisticRegression:
            return train_logistic(f0, f1, opt);
        case ClassifierKind::LDA:
            return train_lda(f0, f1, opt);
        default:
            return train_knn(f0, f1, opt);
        }
    }

    inline bool ClassifierModel::decide_class1(const ChipFeature &f) const
    {
        if (kind != ClassifierKind::KNN)
            return score(f) > 0.0;

        // Majority of the k nearest; distance ties keep the lower training index
        const std::size_t kk = std::min<std::size_t>(std::size_t(k), points.size());
        std::vector<std::pair<double, std::size_t>> d(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
        {
            const double dx = points[i].re - f.re, dy = points[i].im - f.im;
            d[i] = {dx * dx + dy * dy, i};
        }
        std::partial_sort(d.begin(), d.begin() + kk, d.end());
        std::size_t votes1 = 0;
        for (std::size_t i = 0; i < kk; ++i)
            votes1 += labels[d[i].second];
        if (2 * votes1 == kk)
            return labels[d[0].second] == 1;
        return 2 * votes1 > kk;
    }

    inline std::vector<std::int8_t> predict_chips(const ClassifierModel &model, const std::vector<ChipFeature> &f,
                                                  Modulation m)
    {
        std::vector<std::int8_t> out(f.size());
        const auto c0 = std::int8_t(chip_x0(m)), c1 = std::int8_t(chip_x1(m));
        for (std::size_t i = 0; i < f.size(); ++i)
            out[i] = model.decide_class1(f[i]) ? c1 : c0;
        return out;
    }
}

#endif
