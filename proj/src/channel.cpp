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

#include "srbf/channel.hpp"

#include <cmath>
#include <string>

#include "srbf/rng.hpp"

namespace srbf {

ArrayGeometry::ArrayGeometry(int n, double spacing)
    : num_elements(n), spacing_wavelengths(spacing)
{
    if (n < 1)
        throw InvalidArgument("ArrayGeometry: num_elements must be >= 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw InvalidArgument("ArrayGeometry: spacing_wavelengths must be positive");
}

ComplexVec steering_vector(const ArrayGeometry& geometry, double theta)
{
    if (!(theta >= 0.0 && theta <= kPi))
        throw InvalidArgument("steering_vector: theta " + std::to_string(theta) +
                              " outside [0, pi]");
    const double step = 2.0 * kPi * geometry.spacing_wavelengths * std::cos(theta);
    ComplexVec a(geometry.num_elements);
    for (int n = 0; n < geometry.num_elements; ++n)
        a(n) = std::polar(1.0, step * n);
    return a;
}

ComplexMat los_component(const ArrayGeometry& tx, const ArrayGeometry& rx, double phi)
{
    return steering_vector(rx, phi) * steering_vector(tx, phi).adjoint();
}

ArrayGeometry tx_geometry(const SystemConfig& cfg)
{
    return {cfg.n_t, cfg.spacing_wavelengths};
}

ArrayGeometry rx_geometry(const SystemConfig& cfg)
{
    return {cfg.n_r, cfg.spacing_wavelengths};
}

ChannelRealization draw_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, double phi,
                                double kappa_linear, std::uint64_t base_seed,
                                std::uint64_t trial_index)
{
    if (!(kappa_linear >= 0.0))
        throw InvalidArgument("draw_channel: kappa must be non-negative");

    ChannelRealization ch;
    ch.true_angle_rad = phi;
    ch.rician_kappa_linear = kappa_linear;
    ch.alpha = Complex(1.0, 0.0);
    ch.h_los = los_component(tx, rx, phi);

    auto rng = Xoshiro256ss::for_trial(base_seed, trial_index);
    ch.h_nlos.resize(rx.num_elements, tx.num_elements);
    for (int r = 0; r < rx.num_elements; ++r)
        for (int c = 0; c < tx.num_elements; ++c)
            ch.h_nlos(r, c) = rng.complex_normal();

    const double k = kappa_linear;
    const double w_los = std::isinf(k) ? 1.0 : std::sqrt(k / (k + 1.0));
    const double w_nlos = std::isinf(k) ? 0.0 : std::sqrt(1.0 / (k + 1.0));
    ch.h_full = ch.alpha * (w_los * ch.h_los + w_nlos * ch.h_nlos);
    return ch;
}

ChannelRealization draw_channel(const SystemConfig& cfg, std::uint64_t trial_index)
{
    return draw_channel(tx_geometry(cfg), rx_geometry(cfg), cfg.phi_rad(), cfg.kappa_linear(),
                        cfg.base_seed, trial_index);
}

}  // namespace srbf
