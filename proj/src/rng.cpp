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

#include "srbf/rng.hpp"

#include <cmath>

namespace srbf {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed)
{
    std::uint64_t x = seed;
    for (auto& word : s_) {
        x += kGolden;
        word = splitmix64_mix(x);
    }
}

Xoshiro256ss Xoshiro256ss::for_trial(std::uint64_t base_seed, std::uint64_t trial_index)
{
    // Two rounds of mixing so that (seed, i) and (seed', i') collide only
    // if the 64-bit keys collide.
    const std::uint64_t key = splitmix64_mix(splitmix64_mix(base_seed) ^ (trial_index * kGolden + 1));
    return Xoshiro256ss(key);
}

std::uint64_t Xoshiro256ss::next()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256ss::uniform()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Complex Xoshiro256ss::complex_normal()
{
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * kPi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace srbf
