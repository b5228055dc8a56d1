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

#include <vector>

#include "srbf/channel.hpp"
#include "srbf/numerics.hpp"

namespace srbf {

/// Transmit precoder W (N_T x N_S) together with its total power tr(W W^H).
class Precoder {
public:
    Precoder() = default;
    /// Power is taken from the matrix.
    explicit Precoder(ComplexMat w);
    /// Checks tr(W W^H) = power within 1e-9 relative.
    Precoder(ComplexMat w, double power);

    const ComplexMat& w() const noexcept { return w_; }
    double power() const noexcept { return power_; }
    int streams() const noexcept { return static_cast<int>(w_.cols()); }

private:
    ComplexMat w_;
    double power_ = 0.0;
};

/// R = H W W^H H^H + N0 I (Hermitian positive definite).
struct SpatialCovariance {
    ComplexMat r;
};

struct BeampatternSample {
    double theta;     // radians
    double power;     // a(theta)^H R a(theta)
    double power_db;  // normalized so the grid maximum is 0 dB
};

SpatialCovariance spatial_covariance(const ComplexMat& h, const Precoder& w, double n0);

/// [J]_mn = J0(2 pi (m - n) spacing): the direction-average of a(t) a(t)^H
/// over t in [0, pi].
ComplexMat build_j_matrix(const ArrayGeometry& rx);

/// Angular-domain peak-to-average ratio a(theta)^H R a(theta) / tr(R J).
double adpar(double theta, const SpatialCovariance& r, const ArrayGeometry& rx);

/// log2 det(I + H W W^H H^H / N0) in bits/s/Hz.
double achievable_rate(const ComplexMat& h, const Precoder& w, double n0);

/// Uniform grid over [0, pi] inclusive.
std::vector<BeampatternSample> beampattern(const SpatialCovariance& r, const ArrayGeometry& rx,
                                           int grid_points);

/// Fills power_db from power (max -> 0 dB).
void normalize_db(std::vector<BeampatternSample>& pattern);

/// ADPAR numerator/denominator matrices after restricting W = V_N W'.
struct ProjectedForms {
    ComplexMat a_hat_prime;  // H'^H A(phi_hat) H' + (N_R N0 / P) I
    ComplexMat j_prime;      // H'^H J H' + (N_R N0 / P) I
};

ProjectedForms projected_forms(const ComplexMat& h, const ComplexMat& v_n, const ArrayGeometry& rx,
                               double n0, double p, double phi_hat);

/// tr(W'^H A W') / tr(W'^H J W'); equals the ADPAR of V_N W' when
/// ||W'||_F^2 = P.
double trace_ratio(const ComplexMat& w_prime, const ComplexMat& a_hat_prime,
                   const ComplexMat& j_prime);

}  // namespace srbf
