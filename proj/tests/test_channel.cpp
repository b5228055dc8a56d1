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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "srbf/channel.hpp"

using namespace srbf;

namespace {

bool near(Complex a, Complex b, double tol = 1e-12)
{
    return std::abs(a - b) <= tol;
}

}  // namespace

TEST_CASE("steering_vector: worked examples")
{
    const ComplexVec broadside = steering_vector(ArrayGeometry(4, 0.5), kPi / 2);
    for (int i = 0; i < 4; ++i)
        CHECK(near(broadside(i), 1.0));

    const ComplexVec endfire = steering_vector(ArrayGeometry(2, 0.5), 0.0);
    CHECK(near(endfire(0), 1.0));
    CHECK(near(endfire(1), -1.0));

    const ComplexVec third = steering_vector(ArrayGeometry(3, 0.5), kPi / 3);
    CHECK(near(third(0), 1.0));
    CHECK(near(third(1), Complex(0.0, 1.0)));
    CHECK(near(third(2), -1.0));
}

TEST_CASE("steering_vector: unit modulus, norm^2 = N, range check")
{
    const ArrayGeometry g(9, 0.37);
    for (double theta : {0.0, 0.3, 1.2, 2.9, kPi}) {
        const ComplexVec a = steering_vector(g, theta);
        CHECK(a.squaredNorm() == doctest::Approx(9.0).epsilon(1e-14));
        CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-14);
    }
    CHECK_THROWS_AS(steering_vector(g, -1e-3), InvalidArgument);
    CHECK_THROWS_AS(steering_vector(g, kPi + 1e-3), InvalidArgument);
    CHECK_THROWS_AS(ArrayGeometry(0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(ArrayGeometry(4, 0.0), InvalidArgument);
}

TEST_CASE("los_component: worked examples")
{
    const ComplexMat one = los_component(ArrayGeometry(1, 0.5), ArrayGeometry(1, 0.5), 0.7);
    CHECK(near(one(0, 0), 1.0));

    const ComplexMat ones = los_component(ArrayGeometry(3, 0.5), ArrayGeometry(2, 0.5), kPi / 2);
    CHECK((ones - ComplexMat::Ones(2, 3)).cwiseAbs().maxCoeff() <= 1e-14);

    const ComplexMat h = los_component(ArrayGeometry(4, 0.5), ArrayGeometry(2, 0.5), kPi / 3);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 4);
    CHECK(h.norm() == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
    const SvdResult s = svd(h);
    CHECK(s.s(1) <= 1e-9 * s.s(0));
}

TEST_CASE("draw_channel: reconstruction and rank-1 LoS part")
{
    SystemConfig cfg;
    cfg.kappa_db = 3.0;
    const ChannelRealization ch = draw_channel(cfg, 17);
    const double k = cfg.kappa_linear();
    const ComplexMat rebuilt =
        ch.alpha * (std::sqrt(k / (k + 1.0)) * ch.h_los + std::sqrt(1.0 / (k + 1.0)) * ch.h_nlos);
    CHECK((rebuilt - ch.h_full).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(ch.alpha == Complex(1.0, 0.0));
    CHECK(ch.true_angle_rad == doctest::Approx(kPi / 3));
    CHECK(ch.h_full.rows() == cfg.n_r);
    CHECK(ch.h_full.cols() == cfg.n_t);
    const SvdResult s = svd(ch.h_los);
    CHECK(s.s(1) <= 1e-9 * s.s(0));
}

TEST_CASE("draw_channel: Rician limits")
{
    const ArrayGeometry tx(6, 0.5), rx(4, 0.5);
    const ChannelRealization los = draw_channel(tx, rx, 1.0, 1e12, 5, 0);
    CHECK((los.h_full - los.h_los).norm() <= 1e-5 * los.h_los.norm());

    const ChannelRealization nlos = draw_channel(tx, rx, 1.0, 0.0, 5, 0);
    CHECK(nlos.h_full == nlos.h_nlos);

    const ChannelRealization pure = draw_channel(tx, rx, 1.0, std::numeric_limits<double>::infinity(), 5, 0);
    CHECK((pure.h_full - pure.h_los).norm() == 0.0);

    CHECK_THROWS_AS(draw_channel(tx, rx, 1.0, -1.0, 5, 0), InvalidArgument);
}

TEST_CASE("draw_channel: deterministic per (seed, trial), distinct across trials")
{
    SystemConfig cfg;
    const ChannelRealization a = draw_channel(cfg, 3);
    const ChannelRealization b = draw_channel(cfg, 3);
    const ChannelRealization c = draw_channel(cfg, 4);
    CHECK(a.h_full == b.h_full);
    CHECK(!(a.h_nlos == c.h_nlos));

    SystemConfig other = cfg;
    other.base_seed = cfg.base_seed + 1;
    CHECK(!(draw_channel(other, 3).h_nlos == a.h_nlos));
}

TEST_CASE("draw_channel: NLoS second moment is 1 within 2% over 1e5 entries")
{
    const ArrayGeometry tx(16, 0.5), rx(8, 0.5);
    double power = 0.0;
    long count = 0;
    for (std::uint64_t t = 0; t < 800; ++t) {
        const ChannelRealization ch = draw_channel(tx, rx, 1.0, 1.0, 77, t);
        power += ch.h_nlos.squaredNorm();
        count += ch.h_nlos.size();
    }
    REQUIRE(count >= 100000);
    CHECK(power / static_cast<double>(count) == doctest::Approx(1.0).epsilon(0.02));
}
