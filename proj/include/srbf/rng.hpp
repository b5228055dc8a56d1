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

#include <array>
#include <cstdint>

#include "srbf/numerics.hpp"

namespace srbf {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64_mix(std::uint64_t z);

/**
 * xoshiro256** 1.0 (Blackman and Vigna), 64-bit output.
 *
 * The 256-bit state is filled from a SplitMix64 sequence. Per-trial
 * substreams are keyed on (base_seed, trial_index) through
 * Xoshiro256ss::for_trial, so draws never depend on scheduling order.
 * Normal variates use Box-Muller on 53-bit uniforms; the sequence is
 * fully specified by this header and the C library's log/sqrt/cos/sin.
 */
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed);

    static Xoshiro256ss for_trial(std::uint64_t base_seed, std::uint64_t trial_index);

    std::uint64_t next();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Circularly-symmetric complex Gaussian CN(0, 1): real and imaginary
    /// parts independent with variance 1/2 each.
    Complex complex_normal();

private:
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace srbf
