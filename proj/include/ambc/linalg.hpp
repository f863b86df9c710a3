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

#ifndef AMBC_LINALG_HPP
#define AMBC_LINALG_HPP

#include "core.hpp"

namespace ambc
{
    struct PowerIterationOptions
    {
        double tolerance = 1e-10; // on ||R v - lambda v|| / |lambda|
        int max_iterations = 10000;
        double start_perturbation = 1e-3; // start vector e1 + eps * e2
    };

    struct PowerIterationResult
    {
        CVector vector;          // unit norm, largest-magnitude entry real positive
        double eigenvalue = 0.0; // Rayleigh quotient v^H R v
        int iterations = 0;
        double residual = 0.0;   // ||R v - lambda v||
        bool converged = false;
    };

    // Multiply by the unit phase that makes the largest-magnitude entry real positive
    inline void fix_phase(CVector &v)
    {
        Eigen::Index k = 0;
        v.cwiseAbs2().maxCoeff(&k);
        const double m = std::abs(v[k]);
        if (m > 0.0)
            v *= std::conj(v[k]) / m;
    }

    // Principal eigenpair of a Hermitian PSD matrix
    inline PowerIterationResult power_iteration(const CMatrix &R, const PowerIterationOptions &opt = {})
    {
        require(R.rows() == R.cols() && R.rows() >= 1, "matrix must be square and non-empty");
        const Eigen::Index n = R.rows();
        require(R.cwiseAbs().maxCoeff() > 0.0, "matrix is zero");

        PowerIterationResult res;
        CVector v = CVector::Zero(n);
        v[0] = 1.0;
        if (n > 1)
            v[1] = opt.start_perturbation;
        v.normalize();

        // A start vector orthogonal to the dominant subspace would stall the loop. In exact arithmetic
        // R v = 0 means that happened; fall back to the column of largest norm.
        CVector w = R * v;
        if (w.norm() == 0.0)
        {
            Eigen::Index k = 0;
            R.colwise().norm().maxCoeff(&k);
            v = R.col(k).normalized();
            w = R * v;
        }

        for (int it = 1; it <= opt.max_iterations; ++it)
        {
            const double wn = w.norm();
            if (wn == 0.0)
                break;
            v = w / wn;
            w = R * v;
            const double lambda = std::real(v.dot(w));
            res.iterations = it;
            res.eigenvalue = lambda;
            res.residual = (w - lambda * v).norm();
            if (res.residual <= opt.tolerance * std::max(std::abs(lambda), 1e-300))
            {
                res.converged = true;
                break;
            }
        }
        fix_phase(v);
        res.vector = v;
        return res;
    }

    // Sample covariance (1/M) X X^H
    template <typename Derived>
    CMatrix sample_covariance(const Eigen::MatrixBase<Derived> &X)
    {
        require(X.cols() >= 1, "need at least one sample column");
        return (X * X.adjoint()) / double(X.cols());
    }

    template <typename Derived>
    PowerIterationResult principal_direction(const Eigen::MatrixBase<Derived> &samples,
                                             const PowerIterationOptions &opt = {})
    {
        require(samples.cols() >= 1, "need at least one sample column");
        require(samples.cwiseAbs().maxCoeff() > 0.0, "samples are all zero");
        return power_iteration(sample_covariance(samples), opt);
    }

    // Roots of t^2 - tr t + det for a 2x2 matrix with real trace and determinant, ascending
    inline std::pair<double, double> real_quadratic_roots(double tr, double det)
    {
        const double half = tr / 2.0;
        const double disc = std::sqrt(std::max(half * half - det, 0.0));
        const double q = half >= 0.0 ? half + disc : half - disc;
        if (q == 0.0)
            return {0.0, 0.0};
        const double r1 = q, r2 = det / q;
        return {std::min(r1, r2), std::max(r1, r2)};
    }
}

#endif
