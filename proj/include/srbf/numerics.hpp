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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace srbf {

using Complex = std::complex<double>;
using ComplexMat = Eigen::MatrixXcd;
using ComplexVec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative kernel fails to converge or a result that
/// must exist cannot be produced.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full SVD, M = U diag(S) V^H with U (m x m), V (n x n) unitary and
/// S holding the min(m, n) singular values in descending order.
struct SvdResult {
    ComplexMat u;
    RealVec s;
    ComplexMat v;
};

/// Eigen-pairs of a Hermitian matrix, eigenvalues descending.
struct EigResult {
    RealVec values;
    ComplexMat vectors;
};

/// Generalized eigen-pairs of a Hermitian / positive-definite pair {A, B}:
/// T^H B T = I and T^H A T = diag(eigenvalues), eigenvalues descending.
struct GevdResult {
    RealVec eigenvalues;
    ComplexMat eigenvectors;
};

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const ComplexMat& m, std::string_view what);

/// ||M - M^H||_F <= tol * max(1, ||M||_F).
bool is_hermitian(const ComplexMat& m, double tol = 1e-12);

SvdResult svd(const ComplexMat& m);

/// Symmetrizes before factoring; rejects inputs that are not Hermitian
/// within 1e-12 (relative to max(1, ||M||_F)).
EigResult hermitian_evd(const ComplexMat& m);

/// Cholesky reduction B = L L^H followed by the Hermitian EVD of
/// L^-1 A L^-H. Eigenvectors are mapped back through L^-H.
GevdResult gevd(const ComplexMat& a, const ComplexMat& b);

/// Lower-triangular L with L L^H = M. Throws InvalidArgument unless M is
/// Hermitian positive definite.
ComplexMat cholesky(const ComplexMat& m);

/// Natural-log determinant of a Hermitian positive-definite matrix.
double logdet_pd(const ComplexMat& m);

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

}  // namespace srbf
