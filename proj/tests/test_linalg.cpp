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
#include <ambc/linalg.hpp>
#include <ambc/random.hpp>

using namespace ambc;
using Catch::Approx;

namespace
{
    CMatrix random_psd(Rng &rng, int n, int rank)
    {
        CMatrix X(n, rank);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < rank; ++j)
                X(i, j) = rng.complex_normal();
        return X * X.adjoint();
    }
}

TEST_CASE("Rank-one samples return the generating direction")
{
    CVector a(5);
    a << cdouble(0.3, 0.1), cdouble(-0.2, 0.5), 0.4, cdouble(0, -0.6), cdouble(0.1, 0.1);
    a.normalize();
    CMatrix S = a * Eigen::RowVectorXcd::Ones(20);
    const auto r = principal_direction(S);
    CHECK(r.converged);
    CHECK(std::abs(a.dot(r.vector)) == Approx(1.0).epsilon(1e-12));
    CHECK(r.eigenvalue == Approx(1.0).epsilon(1e-12));

    Eigen::Index k;
    r.vector.cwiseAbs().maxCoeff(&k);
    CHECK(std::abs(r.vector[k].imag()) < 1e-14);
    CHECK(r.vector[k].real() > 0);
    CHECK(r.vector.norm() == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Power iteration agrees with a Jacobi eigensolver")
{
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial)
    {
        const CMatrix R = random_psd(rng, 8, 3 + trial % 8);
        const auto [lambda, v] = oracle::hermitian_top(R);
        const auto r = power_iteration(R);
        REQUIRE(r.converged);
        CHECK(std::abs(v.dot(r.vector)) > 1.0 - 1e-8);
        CHECK(r.eigenvalue == Approx(lambda).epsilon(1e-9));
        CHECK(r.residual <= 1e-10 * lambda);
    }
}

TEST_CASE("Repeated top eigenvalue: residual is small")
{
    CMatrix D = CMatrix::Zero(4, 4);
    D.diagonal() << 3.0, 3.0, 1.0, 0.5;
    Rng rng(3);
    CMatrix X(4, 4);
    for (int i = 0; i < 16; ++i)
        X.data()[i] = rng.complex_normal();
    const Eigen::HouseholderQR<CMatrix> qr(X);
    const CMatrix Q = qr.householderQ();
    const CMatrix R = Q * D * Q.adjoint();
    const auto r = power_iteration(R);
    CHECK(r.converged);
    CHECK(r.eigenvalue == Approx(3.0).epsilon(1e-9));
    CHECK((R * r.vector - r.eigenvalue * r.vector).norm() < 1e-8);
}

TEST_CASE("Zero input is rejected and slow convergence is reported")
{
    CHECK_THROWS_AS(principal_direction(CMatrix::Zero(3, 4)), InvalidArgument);
    CHECK_THROWS_AS(power_iteration(CMatrix::Zero(3, 3)), InvalidArgument);

    CMatrix R = CMatrix::Zero(3, 3);
    R.diagonal() << 1.0, 0.999999, 0.2;
    PowerIterationOptions opt;
    opt.max_iterations = 20;
    const auto r = power_iteration(R, opt);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 20);
    CHECK(r.residual > 0.0);
}

TEST_CASE("Start vector orthogonal to the dominant subspace still finds it")
{
    CMatrix R = CMatrix::Zero(3, 3);
    R(2, 2) = 5.0;
    const auto r = power_iteration(R);
    CHECK(r.converged);
    CHECK(std::abs(r.vector[2]) == Approx(1.0));
    CHECK(r.eigenvalue == Approx(5.0));
}

TEST_CASE("Stable quadratic roots")
{
    const auto [a, b] = real_quadratic_roots(2.0, -3.0);
    CHECK(a == Approx(-1.0));
    CHECK(b == Approx(3.0));
    const auto [c, d] = real_quadratic_roots(1e8, -1.0);
    CHECK(c == Approx(-1e-8).epsilon(1e-12));
    CHECK(d == Approx(1e8));
}
