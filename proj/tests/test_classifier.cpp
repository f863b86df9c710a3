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

#include <ambc/classifier.hpp>
#include <ambc/random.hpp>

using namespace ambc;
using Catch::Approx;

namespace
{
    std::vector<ChipFeature> blob(Rng &rng, double mx, double my, double sd, int n)
    {
        std::vector<ChipFeature> out(n);
        for (auto &f : out)
            f = {mx + sd * rng.normal() / std::sqrt(2.0), my + sd * rng.normal() / std::sqrt(2.0)};
        return out;
    }

    double accuracy(const ClassifierModel &m, const std::vector<ChipFeature> &f0, const std::vector<ChipFeature> &f1)
    {
        int ok = 0;
        for (const auto &f : f0)
            ok += !m.decide_class1(f);
        for (const auto &f : f1)
            ok += m.decide_class1(f);
        return double(ok) / double(f0.size() + f1.size());
    }
}

TEST_CASE("Separated blobs are classified perfectly")
{
    Rng rng(1);
    const auto f0 = blob(rng, -5, 2, 0.3, 64);
    const auto f1 = blob(rng, 5, -2, 0.3, 64);
    for (auto kind : {ClassifierKind::LogisticRegression, ClassifierKind::LDA, ClassifierKind::KNN})
    {
        const auto m = train_classifier(kind, f0, f1);
        CHECK(accuracy(m, f0, f1) == 1.0);
        const auto chips = predict_chips(m, f1, Modulation::BPSK);
        CHECK(std::all_of(chips.begin(), chips.end(), [](std::int8_t c) { return c == 1; }));
        const auto ook = predict_chips(m, f0, Modulation::OOK);
        CHECK(std::all_of(ook.begin(), ook.end(), [](std::int8_t c) { return c == 0; }));
    }
    const auto lr = train_classifier(ClassifierKind::LogisticRegression, f0, f1);
    CHECK(std::isfinite(lr.w_re));
    CHECK(std::isfinite(lr.w_im));
    CHECK(lr.iterations <= 50);
}

TEST_CASE("Symmetric clusters give a near-zero LR intercept")
{
    ClassifierOptions opt;
    opt.fit_intercept = true;
    // the per-run intercept is noisy at this separation; the symmetry shows in the average
    double bias_sum = 0, wnorm_sum = 0;
    for (int seed = 0; seed < 100; ++seed)
    {
        Rng rng(1000 + seed);
        const double mre = 0.8, mim = -0.5;
        const auto f0 = blob(rng, -mre, -mim, 1.0, 64);
        const auto f1 = blob(rng, mre, mim, 1.0, 64);
        const auto m = train_classifier(ClassifierKind::LogisticRegression, f0, f1, opt);
        REQUIRE(m.converged);
        bias_sum += m.bias;
        wnorm_sum += std::hypot(m.w_re, m.w_im);
    }
    CHECK(std::abs(bias_sum / 100) < 0.1 * wnorm_sum / 100);
}

TEST_CASE("LR without intercept passes through the origin")
{
    Rng rng(9);
    const auto f0 = blob(rng, -1, -1, 1.0, 64);
    const auto f1 = blob(rng, 1, 1, 1.0, 64);
    ClassifierOptions opt;
    opt.fit_intercept = false;
    const auto m = train_classifier(ClassifierKind::LogisticRegression, f0, f1, opt);
    CHECK(m.bias == 0.0);
    CHECK(m.converged);
    CHECK(m.w_re > 0);
    CHECK(m.w_im > 0);
}

TEST_CASE("LR is invariant to a joint rescaling of the features")
{
    Rng rng(21);
    auto f0 = blob(rng, -1, 0.4, 1.0, 64);
    auto f1 = blob(rng, 1, -0.4, 1.0, 64);
    const auto m1 = train_classifier(ClassifierKind::LogisticRegression, f0, f1);
    const double k = 3.7e4;
    auto s0 = f0, s1 = f1;
    for (auto &f : s0)
        f = {f.re * k, f.im * k};
    for (auto &f : s1)
        f = {f.re * k, f.im * k};
    const auto m2 = train_classifier(ClassifierKind::LogisticRegression, s0, s1);
    CHECK(m2.w_re * k == Approx(m1.w_re).epsilon(1e-6));
    CHECK(m2.w_im * k == Approx(m1.w_im).epsilon(1e-6));
    CHECK(m2.bias == Approx(m1.bias).margin(1e-9));
}

TEST_CASE("Identical class distributions terminate within the iteration cap")
{
    Rng rng(5);
    const auto f0 = blob(rng, 0, 0, 1.0, 64);
    const auto f1 = blob(rng, 0, 0, 1.0, 64);
    const auto m = train_classifier(ClassifierKind::LogisticRegression, f0, f1);
    CHECK(m.iterations <= 50);
    CHECK(std::isfinite(m.score({0.3, -0.2})));
}

TEST_CASE("Separable data stays finite")
{
    std::vector<ChipFeature> f0(10, {0.0, 0.0}), f1;
    for (int i = 1; i <= 10; ++i)
        f1.push_back({double(i), 0.5 * i});
    const auto m = train_classifier(ClassifierKind::LogisticRegression, f0, f1);
    CHECK(std::isfinite(m.w_re));
    CHECK(std::isfinite(m.bias));
    CHECK(m.iterations <= 50);
    CHECK(accuracy(m, f0, f1) == 1.0);
}

TEST_CASE("Linear rule reproduces the optimum statistic sign")
{
    const double phi = 2.1;
    ClassifierModel m;
    m.w_re = std::cos(phi);
    m.w_im = std::sin(phi);
    Rng rng(4);
    for (int i = 0; i < 1000; ++i)
    {
        const cdouble v{rng.normal(), rng.normal()};
        const double zeta = std::real(std::polar(1.0, -phi) * v);
        CHECK(m.decide_class1({v.real(), v.imag()}) == (zeta > 0));
    }
}

TEST_CASE("LDA with a singular pooled covariance adds a ridge")
{
    std::vector<ChipFeature> f0(8, {-1.0, 0.0}), f1(8, {1.0, 0.0});
    const auto m = train_classifier(ClassifierKind::LDA, f0, f1);
    CHECK(m.ridge_added);
    CHECK(accuracy(m, f0, f1) == 1.0);
    CHECK(m.mean1.x() == Approx(1.0));
    CHECK(m.mean0.x() == Approx(-1.0));
}

TEST_CASE("LDA matches closed form on Gaussian classes")
{
    Rng rng(8);
    const auto f0 = blob(rng, -1, 0, 1.0, 2000);
    const auto f1 = blob(rng, 1, 0, 1.0, 2000);
    const auto m = train_classifier(ClassifierKind::LDA, f0, f1);
    CHECK_FALSE(m.ridge_added);
    // within-class variance is 0.5 per axis, so w ~ (2/0.5, 0)
    CHECK(m.w_re == Approx(4.0).epsilon(0.1));
    CHECK(std::abs(m.w_im) < 0.3);
    CHECK(std::abs(m.bias) < 0.3);
}

TEST_CASE("kNN votes over the k nearest")
{
    std::vector<ChipFeature> f0, f1;
    for (int i = 0; i < 30; ++i)
    {
        f0.push_back({-1.0 - 0.01 * i, 0.0});
        f1.push_back({1.0 + 0.01 * i, 0.0});
    }
    ClassifierOptions opt;
    const auto m = train_classifier(ClassifierKind::KNN, f0, f1, opt);
    CHECK(m.k == 23);
    CHECK(m.decide_class1({0.1, 0.0}));
    CHECK_FALSE(m.decide_class1({-0.1, 0.0}));
    opt.k = 1;
    const auto m1 = train_classifier(ClassifierKind::KNN, f0, {{5.0, 0.0}}, opt);
    CHECK(m1.decide_class1({4.0, 0.0}));
    CHECK_THROWS_AS(train_classifier(ClassifierKind::KNN, {}, f1), InvalidArgument);
}
