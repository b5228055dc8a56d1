// SPDX-License-Identifier: Apache-2.0
//
// srbf: sensing-resistance beamforming for MIMO links
// Copyright (C) 2026 The srbf authors
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

#include "srbf/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace srbf {

void require_finite(const ComplexMat& m, std::string_view what)
{
    if (m.size() == 0)
        throw InvalidArgument(std::string(what) + ": empty matrix");
    if (!m.allFinite())
        throw InvalidArgument(std::string(what) + ": non-finite entry");
}

bool is_hermitian(const ComplexMat& m, double tol)
{
    if (m.rows() != m.cols())
        return false;
    const double scale = std::max(1.0, m.norm());
    return (m - m.adjoint()).norm() <= tol * scale;
}

SvdResult svd(const ComplexMat& m)
{
    require_finite(m, "svd");
    Eigen::JacobiSVD<ComplexMat> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("svd: Jacobi sweeps did not converge");
    // JacobiSVD already sorts singular values in decreasing order.
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

EigResult hermitian_evd(const ComplexMat& m)
{
    require_finite(m, "hermitian_evd");
    if (!is_hermitian(m))
        throw InvalidArgument("hermitian_evd: matrix is not Hermitian");
    const ComplexMat sym = 0.5 * (m + m.adjoint());

    Eigen::SelfAdjointEigenSolver<ComplexMat> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("hermitian_evd: tridiagonal QR did not converge");

    // Eigen returns ascending order; flip to descending.
    const Eigen::Index n = sym.rows();
    EigResult out{RealVec(n), ComplexMat(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = solver.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

ComplexMat cholesky(const ComplexMat& m)
{
    require_finite(m, "cholesky");
    if (!is_hermitian(m))
        throw InvalidArgument("cholesky: matrix is not Hermitian");
    const ComplexMat sym = 0.5 * (m + m.adjoint());
    Eigen::LLT<ComplexMat> llt(sym);
    if (llt.info() != Eigen::Success)
        throw InvalidArgument("cholesky: matrix is not positive definite");
    ComplexMat l = llt.matrixL();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        if (!(l(i, i).real() > 0.0))
            throw InvalidArgument("cholesky: matrix is not positive definite");
    }
    return l;
}

double logdet_pd(const ComplexMat& m)
{
    const ComplexMat l = cholesky(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        acc += std::log(l(i, i).real());
    return 2.0 * acc;
}

GevdResult gevd(const ComplexMat& a, const ComplexMat& b)
{
    require_finite(a, "gevd");
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw InvalidArgument("gevd: A and B must be square and of equal size");
    if (!is_hermitian(a))
        throw InvalidArgument("gevd: A is not Hermitian");

    const ComplexMat l = cholesky(b);
    const auto lower = l.triangularView<Eigen::Lower>();

    // C = L^-1 A L^-H
    ComplexMat tmp = lower.solve(a);
    ComplexMat c = lower.solve(tmp.adjoint());
    c = 0.5 * (c + c.adjoint());

    EigResult std_evd = hermitian_evd(c);
    // T = L^-H Y
    ComplexMat t = l.adjoint().triangularView<Eigen::Upper>().solve(std_evd.vectors);
    return {std::move(std_evd.values), std::move(t)};
}

}  // namespace srbf
