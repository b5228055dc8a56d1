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

#include "srbf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srbf {
namespace {

double frob2(const ComplexMat& m)
{
    return m.squaredNorm();
}

}  // namespace

Precoder::Precoder(ComplexMat w)
    : w_(std::move(w)), power_(frob2(w_))
{
    require_finite(w_, "Precoder");
}

Precoder::Precoder(ComplexMat w, double power)
    : w_(std::move(w)), power_(power)
{
    require_finite(w_, "Precoder");
    const double actual = frob2(w_);
    if (!(power >= 0.0) || std::abs(actual - power) > 1e-9 * std::max(power, 1e-300))
        throw InvalidArgument("Precoder: tr(W W^H) does not match the declared power");
}

SpatialCovariance spatial_covariance(const ComplexMat& h, const Precoder& w, double n0)
{
    if (h.cols() != w.w().rows())
        throw InvalidArgument("spatial_covariance: H columns must match W rows");
    if (!(n0 > 0.0))
        throw InvalidArgument("spatial_covariance: n0 must be positive");
    const ComplexMat hw = h * w.w();
    ComplexMat r = hw * hw.adjoint();
    r.diagonal().array() += n0;
    r = 0.5 * (r + r.adjoint());
    return {std::move(r)};
}

ComplexMat build_j_matrix(const ArrayGeometry& rx)
{
    const int n = rx.num_elements;
    ComplexMat j(n, n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            j(m, k) = bessel_j0(2.0 * kPi * (m - k) * rx.spacing_wavelengths);
    return j;
}

double adpar(double theta, const SpatialCovariance& r, const ArrayGeometry& rx)
{
    const ComplexVec a = steering_vector(rx, theta);
    if (r.r.rows() != a.size())
        throw InvalidArgument("adpar: covariance size does not match the receive array");
    const double num = a.dot(r.r * a).real();
    const double den = (r.r * build_j_matrix(rx)).trace().real();
    return num / den;
}

double achievable_rate(const ComplexMat& h, const Precoder& w, double n0)
{
    if (h.cols() != w.w().rows())
        throw InvalidArgument("achievable_rate: H columns must match W rows");
    if (!(n0 > 0.0))
        throw InvalidArgument("achievable_rate: n0 must be positive");
    const ComplexMat hw = h * w.w();
    ComplexMat m = (hw * hw.adjoint()) / n0;
    m.diagonal().array() += 1.0;
    m = 0.5 * (m + m.adjoint());
    return std::max(0.0, logdet_pd(m) / std::log(2.0));
}

std::vector<BeampatternSample> beampattern(const SpatialCovariance& r, const ArrayGeometry& rx,
                                           int grid_points)
{
    if (grid_points < 2)
        throw InvalidArgument("beampattern: need at least 2 grid points");
    std::vector<BeampatternSample> out;
    out.reserve(static_cast<std::size_t>(grid_points));
    const double step = kPi / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        // Pin the last point to pi exactly.
        const double theta = (i == grid_points - 1) ? kPi : step * i;
        const ComplexVec a = steering_vector(rx, theta);
        out.push_back({theta, a.dot(r.r * a).real(), 0.0});
    }
    normalize_db(out);
    return out;
}

void normalize_db(std::vector<BeampatternSample>& pattern)
{
    double peak = 0.0;
    for (const auto& s : pattern)
        peak = std::max(peak, s.power);
    for (auto& s : pattern) {
        s.power_db = (s.power > 0.0 && peak > 0.0)
                         ? 10.0 * std::log10(s.power / peak)
                         : -std::numeric_limits<double>::infinity();
    }
}

ProjectedForms projected_forms(const ComplexMat& h, const ComplexMat& v_n, const ArrayGeometry& rx,
                               double n0, double p, double phi_hat)
{
    if (h.cols() != v_n.rows() || h.rows() != rx.num_elements)
        throw InvalidArgument("projected_forms: dimension mismatch");
    if (!(n0 > 0.0) || !(p > 0.0))
        throw InvalidArgument("projected_forms: n0 and p must be positive");
    const Eigen::Index k = v_n.cols();
    const ComplexMat gram = v_n.adjoint() * v_n;
    if ((gram - ComplexMat::Identity(k, k)).norm() > 1e-9)
        throw InvalidArgument("projected_forms: V_N columns are not orthonormal");

    const ComplexMat hp = h * v_n;
    const ComplexVec a = steering_vector(rx, phi_hat);
    const ComplexVec ahp = hp.adjoint() * a;  // H'^H a(phi_hat)
    const double loading = rx.num_elements * n0 / p;

    ProjectedForms out;
    out.a_hat_prime = ahp * ahp.adjoint();
    out.a_hat_prime.diagonal().array() += loading;
    out.a_hat_prime = 0.5 * (out.a_hat_prime + out.a_hat_prime.adjoint());

    out.j_prime = hp.adjoint() * build_j_matrix(rx) * hp;
    out.j_prime.diagonal().array() += loading;
    out.j_prime = 0.5 * (out.j_prime + out.j_prime.adjoint());
    return out;
}

double trace_ratio(const ComplexMat& w_prime, const ComplexMat& a_hat_prime,
                   const ComplexMat& j_prime)
{
    const double num = (w_prime.adjoint() * a_hat_prime * w_prime).trace().real();
    const double den = (w_prime.adjoint() * j_prime * w_prime).trace().real();
    return num / den;
}

}  // namespace srbf
