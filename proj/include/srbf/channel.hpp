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

#include <cstdint>

#include "srbf/config.hpp"
#include "srbf/numerics.hpp"

namespace srbf {

/// Uniform linear array. Wavelength is normalized to 1, so only the
/// element spacing in wavelengths enters the array response.
struct ArrayGeometry {
    int num_elements = 1;
    double spacing_wavelengths = 0.5;

    ArrayGeometry() = default;
    ArrayGeometry(int n, double spacing);
};

/// One block-fading draw of the Rician channel
///   H = alpha (sqrt(k/(k+1)) H_los + sqrt(1/(k+1)) H_nlos).
struct ChannelRealization {
    ComplexMat h_full;  // N_R x N_T
    ComplexMat h_los;   // a_R(phi) a_T(phi)^H
    ComplexMat h_nlos;  // i.i.d. CN(0, 1)
    Complex alpha{1.0, 0.0};
    double rician_kappa_linear = 1.0;
    double true_angle_rad = 0.0;
};

/// Element n (0-based) is exp(j 2 pi n spacing cos(theta)). theta in [0, pi].
ComplexVec steering_vector(const ArrayGeometry& geometry, double theta);

/// a_R(phi) a_T(phi)^H.
ComplexMat los_component(const ArrayGeometry& tx, const ArrayGeometry& rx, double phi);

ArrayGeometry tx_geometry(const SystemConfig& cfg);
ArrayGeometry rx_geometry(const SystemConfig& cfg);

/// Deterministic in (base_seed, trial_index); the NLoS entries are drawn
/// row-major from Xoshiro256ss::for_trial. alpha is fixed to 1.
ChannelRealization draw_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, double phi,
                                double kappa_linear, std::uint64_t base_seed,
                                std::uint64_t trial_index);

ChannelRealization draw_channel(const SystemConfig& cfg, std::uint64_t trial_index);

}  // namespace srbf
