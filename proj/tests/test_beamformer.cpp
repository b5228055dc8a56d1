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

#include "srbf/beamformer.hpp"
#include "srbf/oracles.hpp"

using namespace srbf;
using oracle::random_complex;
using oracle::random_hpd;

namespace {

SystemConfig small(int n_t, int n_r, int n_s, std::uint64_t seed = 1)
{
    SystemConfig c;
    c.n_t = n_t;
    c.n_r = n_r;
    c.n_s = n_s;
    c.base_seed = seed;
    return c;
}

double rate_of(const ComplexMat& g, const RealVec& p, double n0)
{
    ComplexMat c = g * p.cast<Complex>().asDiagonal() * g.adjoint() / n0;
    c.diagonal().array() += 1.0;
    return logdet_pd(0.5 * (c + c.adjoint())) / std::log(2.0);
}

/// Checks every SrSolution invariant that does not depend on the case.
void check_invariants(const SystemConfig& cfg, const ChannelRealization& ch, const SrProblem& prob,
                      const SrSolution& sol)
{
    REQUIRE(sol.case_taken != SolutionCase::Infeasible);
    const ComplexMat& w = sol.w_full.w();
    CHECK((w - prob.v_n() * sol.w_prime).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(w.squaredNorm() - cfg.power_watts) <= 1e-9 * cfg.power_watts);
    const ComplexVec a_t = steering_vector(tx_geometry(cfg), cfg.phi_rad());
    CHECK((a_t.adjoint() * w).norm() <= 1e-9 * std::sqrt(cfg.n_t * cfg.power_watts));
    CHECK((ch.h_los * w).norm() <= 1e-8 * ch.h_los.norm() * w.norm());
    CHECK(sol.achieved_adpar >= sol.gamma - 1e-6);
    CHECK(sol.achieved_rate >= 0.0);
}

}  // namespace

TEST_CASE("choose")
{
    CHECK(choose(15, 8) == 6435);
    CHECK(choose(4, 0) == 1);
    CHECK(choose(4, 5) == 0);
    CHECK(choose(31, 16) == 300540195ull);
}

TEST_CASE("null_space_basis: 2-element complement, orthonormality, projector")
{
    const ComplexMat v2 = null_space_basis(ArrayGeometry(2, 0.5), kPi / 2);
    REQUIRE(v2.cols() == 1);
    ComplexVec d(2);
    d << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(v2.col(0).dot(d)) - 1.0) <= 1e-12);
    CHECK((steering_vector(ArrayGeometry(2, 0.5), kPi / 2).adjoint() * v2).norm() <= 1e-10);

    const ArrayGeometry tx(16, 0.5);
    const ComplexMat v = null_space_basis(tx, kPi / 3);
    CHECK((v.adjoint() * v - ComplexMat::Identity(15, 15)).cwiseAbs().maxCoeff() <= 1e-10);
    const ComplexVec a = steering_vector(tx, kPi / 3);
    CHECK((a.adjoint() * v).norm() <= 1e-10);
    const ComplexMat proj = ComplexMat::Identity(16, 16) - a * a.adjoint() / 16.0;
    CHECK((proj - v * v.adjoint()).cwiseAbs().maxCoeff() <= 1e-9);

    CHECK_THROWS_AS(null_space_basis(ArrayGeometry(1, 0.5), 1.0), InvalidArgument);
}

TEST_CASE("adpar_bounds: trivial pairs")
{
    Xoshiro256ss rng(1);
    const ComplexMat j = random_hpd(5, rng);
    const AdparBounds same = adpar_bounds(j, j);
    CHECK(same.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
    const AdparBounds twice = adpar_bounds(2.0 * j, j);
    CHECK(twice.lambda_min == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(twice.lambda_max == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("adpar bounds hold for random precoders and are attained by the extremal ones")
{
    Xoshiro256ss rng(2);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const SystemConfig cfg = small(6 + static_cast<int>(trial % 3) * 5, 4, 2, 9);
        const SrProblem prob(cfg, draw_channel(cfg, trial));
        const AdparBounds& b = prob.bounds();
        const auto& f = prob.forms();
        for (int k = 0; k < 100; ++k) {
            ComplexMat w = random_complex(cfg.n_t - 1, cfg.n_s, rng);
            w /= w.norm();
            const double rho = trace_ratio(w, f.a_hat_prime, f.j_prime);
            CHECK(rho >= b.lambda_min - 1e-9);
            CHECK(rho <= b.lambda_max + 1e-9);
        }
        const ComplexMat w_max = closed_form_extremal(b.t_max, cfg.power_watts, cfg.n_s);
        const ComplexMat w_min = closed_form_extremal(b.t_min, cfg.power_watts, cfg.n_s);
        CHECK(std::abs(trace_ratio(w_max, f.a_hat_prime, f.j_prime) - b.lambda_max) <= 1e-8 * b.lambda_max);
        CHECK(std::abs(trace_ratio(w_min, f.a_hat_prime, f.j_prime) - b.lambda_min) <= 1e-8);
        CHECK(w_max.squaredNorm() == doctest::Approx(cfg.power_watts).epsilon(1e-12));
        const ComplexVec t = b.t_max;
        const ComplexMat outer = cfg.power_watts * t * t.adjoint() / t.squaredNorm();
        CHECK((w_max * w_max.adjoint() - outer).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(b.lambda_min >= 0.0);
    }
}

TEST_CASE("closed_form_extremal rejects a zero direction")
{
    CHECK_THROWS_AS(closed_form_extremal(ComplexVec::Zero(3), 1.0, 1), InvalidArgument);
}

TEST_CASE("water_filling: dominant mode and equal gains")
{
    ComplexMat h = ComplexMat::Zero(3, 3);
    h(0, 0) = 10.0;
    h(1, 1) = 0.1;
    h(2, 2) = 0.05;
    const ComplexMat w = water_filling(h, 0.01, 1.0, 2);
    CHECK(w.col(0).squaredNorm() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(w.col(1).squaredNorm() == 0.0);

    const ComplexMat eq = water_filling(2.0 * ComplexMat::Identity(4, 4), 1.0, 0.3, 4);
    for (int k = 0; k < 4; ++k)
        CHECK(eq.col(k).squaredNorm() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("water_filling: random 6x4, N_S = 3, against equal power and a simplex grid")
{
    Xoshiro256ss rng(3);
    const ComplexMat h = random_complex(6, 4, rng);
    const double p = 1.0, n0 = 0.5;
    const ComplexMat w = water_filling(h, p, n0, 3);
    CHECK(w.squaredNorm() == doctest::Approx(p).epsilon(1e-12));
    const double wf = achievable_rate(h, Precoder(w, p), n0);

    const SvdResult s = svd(h);
    const ComplexMat v3 = s.v.leftCols(3);
    const double equal = achievable_rate(h, Precoder(v3 * std::sqrt(p / 3.0), p), n0);
    CHECK(wf >= equal - 1e-12);

    // ~1e6 points on the 2-simplex; on the singular basis the rate separates.
    const int n = 1413;
    double best = -1.0;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; i + j <= n; ++j) {
            const double p1 = p * i / n, p2 = p * j / n, p3 = p - p1 - p2;
            const double r = std::log2(1.0 + p1 * s.s(0) * s.s(0) / n0) +
                             std::log2(1.0 + p2 * s.s(1) * s.s(1) / n0) +
                             std::log2(1.0 + p3 * s.s(2) * s.s(2) / n0);
            best = std::max(best, r);
        }
    }
    CHECK(std::abs(wf - best) <= 1e-4);
    CHECK(wf >= best - 1e-12);
}

TEST_CASE("solve_power_allocation: single stream and inactive halfspace")
{
    Xoshiro256ss rng(4);
    const ComplexVec h = random_complex(4, 1, rng);
    RealVec one(1);
    one << 0.3;
    const PowerAllocation single = solve_power_allocation({h}, one, 2.0, 0.1);
    CHECK(single.powers(0) == doctest::Approx(2.0).epsilon(1e-15));

    std::vector<ComplexVec> g;
    for (int i = 0; i < 3; ++i)
        g.emplace_back(random_complex(4, 1, rng));
    RealVec pos(3);
    pos << 0.5, 0.1, 2.0;
    RealVec unit = RealVec::Ones(3);
    const PowerAllocation a = solve_power_allocation(g, pos, 1.0, 0.2);
    const PowerAllocation b = solve_power_allocation(g, unit, 1.0, 0.2);
    CHECK(std::abs(a.rate - b.rate) <= 1e-6);
    CHECK(a.powers.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.powers.minCoeff() >= 0.0);

    RealVec neg(2);
    neg << -0.1, -2.0;
    CHECK_THROWS_AS(solve_power_allocation({g[0], g[1]}, neg, 1.0, 0.2), InfeasibleError);
}

TEST_CASE("solve_power_allocation: N_S = 2 against the feasible-segment grid")
{
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        const SystemConfig cfg = small(5, 4, 2, 21);
        const SrProblem prob(cfg, draw_channel(cfg, trial));
        const double gamma = 0.3 * prob.bounds().lambda_min + 0.7 * prob.bounds().lambda_max;
        const EigResult e = hermitian_evd(prob.forms().a_hat_prime - gamma * prob.forms().j_prime);
        const ComplexMat g = prob.h_prime() * e.vectors;
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(trial % 3);
        RealVec lam(2);
        lam << e.values(0), e.values(k);
        const PowerAllocation fw = solve_power_allocation({g.col(0), g.col(k)}, lam, 1.0, prob.n0());
        const double grid = oracle::power_allocation_grid(g.col(0), g.col(k), lam(0), lam(1), 1.0, prob.n0());
        CHECK(std::abs(fw.rate - grid) <= 1e-4);
        CHECK(fw.powers.dot(lam) >= -1e-12);
    }
}

TEST_CASE("solve_power_allocation: N_S = 4 not beaten by random feasible allocations")
{
    Xoshiro256ss rng(5);
    std::vector<ComplexVec> g;
    for (int i = 0; i < 4; ++i)
        g.emplace_back(random_complex(5, 1, rng));
    RealVec lam(4);
    lam << 1.5, -0.2, -0.7, -1.1;
    const double n0 = 0.3;
    const PowerAllocation fw = solve_power_allocation(g, lam, 1.0, n0);
    ComplexMat gm(5, 4);
    for (int i = 0; i < 4; ++i)
        gm.col(i) = g[static_cast<std::size_t>(i)];
    CHECK(std::abs(rate_of(gm, fw.powers, n0) - fw.rate) <= 1e-12);
    double best = -1.0;
    for (int k = 0; k < 20000; ++k) {
        RealVec p(4);
        for (int i = 0; i < 4; ++i)
            p(i) = -std::log(1.0 - rng.uniform());
        p /= p.sum();
        if (p.dot(lam) < 0.0)
            continue;
        best = std::max(best, rate_of(gm, p, n0));
    }
    CHECK(fw.rate >= best - 1e-9);
}

TEST_CASE("sdr_solve: feasibility, rank, pruning and greedy modes")
{
    for (std::uint64_t trial = 0; trial < 6; ++trial) {
        const SystemConfig cfg = small(10, 6, 3, 31);
        const SrProblem prob(cfg, draw_channel(cfg, trial));
        const auto& f = prob.forms();
        const double gamma = 0.5 * (prob.bounds().lambda_min + prob.bounds().lambda_max);
        const SdrResult r = sdr_solve(prob.h_prime(), f.a_hat_prime, f.j_prime, gamma, 1.0, prob.n0(), 3);
        CHECK(r.exhaustive);
        CHECK(r.w_prime.cols() == 3);
        CHECK(r.w_prime.squaredNorm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(trace_ratio(r.w_prime, f.a_hat_prime, f.j_prime) >= gamma - 1e-6);
        int positive = 0;
        for (Eigen::Index i = 0; i < r.powers.size(); ++i)
            positive += r.powers(i) > 0.0 ? 1 : 0;
        CHECK(positive <= 3);

        SdrOptions no_prune;
        no_prune.prune = false;
        const SdrResult full = sdr_solve(prob.h_prime(), f.a_hat_prime, f.j_prime, gamma, 1.0, prob.n0(), 3, no_prune);
        CHECK(full.indices == r.indices);
        CHECK(std::abs(full.rate - r.rate) <= 1e-12);
        CHECK(full.subsets_solved >= r.subsets_solved);

        SdrOptions greedy;
        greedy.exhaustive_limit = 0;
        const SdrResult gr = sdr_solve(prob.h_prime(), f.a_hat_prime, f.j_prime, gamma, 1.0, prob.n0(), 3, greedy);
        CHECK(!gr.exhaustive);
        CHECK(gr.rate <= r.rate + 1e-9);
        CHECK(trace_ratio(gr.w_prime, f.a_hat_prime, f.j_prime) >= gamma - 1e-6);
    }
}

TEST_CASE("sdr_solve: solver is optimal within its own eigenbasis family")
{
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const SystemConfig cfg = small(5, 4, 2, 41);
        const SrProblem prob(cfg, draw_channel(cfg, trial));
        const double gamma = 0.5 * (prob.bounds().lambda_min + prob.bounds().lambda_max);
        const SrSolution sol = prob.solve(GammaSetting::of(gamma), 2);
        const oracle::RandomSearch rs = oracle::random_eigenbasis_search(prob, gamma, 2, 20000, trial);
        REQUIRE(rs.samples > 0);
        CHECK(sol.achieved_rate >= rs.best_rate - 1e-6);
    }
}

TEST_CASE("sdr_solve: rate approaches the closed form as gamma -> lambda_max")
{
    SystemConfig cfg;
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const SrProblem prob(cfg, draw_channel(cfg, trial));
        const double lmax = prob.bounds().lambda_max;
        const SrSolution near = prob.solve(GammaSetting::of(0.999 * lmax), cfg.n_s);
        const SrSolution at = prob.solve(GammaSetting::max(), cfg.n_s);
        CHECK(near.case_taken == SolutionCase::SdrPath);
        CHECK(at.case_taken == SolutionCase::ClosedFormMax);
        CHECK(std::abs(near.achieved_rate - at.achieved_rate) <= 0.05 * at.achieved_rate);
    }
}

TEST_CASE("SrProblem::solve: case dispatch and invariants")
{
    SystemConfig cfg;
    const ChannelRealization ch = draw_channel(cfg, 2);
    const SrProblem prob(cfg, ch);
    const double lmin = prob.bounds().lambda_min;
    const double lmax = prob.bounds().lambda_max;

    const SrSolution inf = prob.solve(GammaSetting::of(2.0 * lmax), cfg.n_s);
    CHECK(inf.case_taken == SolutionCase::Infeasible);
    CHECK(std::isnan(inf.achieved_adpar));
    CHECK(inf.achieved_rate == 0.0);

    struct Case {
        GammaSetting gamma;
        SolutionCase expect;
    };
    const Case cases[] = {
        {GammaSetting::of(0.0), SolutionCase::WaterFillingInactive},
        {GammaSetting::min(), SolutionCase::WaterFillingInactive},
        {GammaSetting::of(lmin + 0.5e-9), SolutionCase::WaterFillingInactive},
        {GammaSetting::of(0.5 * (lmin + lmax)), SolutionCase::SdrPath},
        {GammaSetting::of(5.0), SolutionCase::SdrPath},
        {GammaSetting::of(lmax - 0.5e-9), SolutionCase::ClosedFormMax},
        {GammaSetting::max(), SolutionCase::ClosedFormMax},
        {GammaSetting::of(lmax + 0.5e-9), SolutionCase::ClosedFormMax},
    };
    for (const auto& c : cases) {
        const SrSolution sol = prob.solve(c.gamma, cfg.n_s);
        CHECK(sol.case_taken == c.expect);
        check_invariants(cfg, ch, prob, sol);
    }
    CHECK(prob.solve(GammaSetting::of(lmax + 2e-9), cfg.n_s).case_taken == SolutionCase::Infeasible);
    CHECK_THROWS_AS(prob.solve(GammaSetting::of(1.0), 0), InvalidArgument);
    CHECK_THROWS_AS(prob.solve(GammaSetting::of(1.0), 9), InvalidArgument);
}

TEST_CASE("rate ordering per realization and benchmark dominance")
{
    SystemConfig cfg;
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        const ChannelRealization ch = draw_channel(cfg, trial);
        const SrProblem prob(cfg, ch);
        const double r0 = prob.solve(GammaSetting::of(0.0), cfg.n_s).achieved_rate;
        const SrSolution s5 = prob.solve(GammaSetting::of(5.0), cfg.n_s);
        const double r5 = s5.achieved_rate;
        const double rmax = prob.solve(GammaSetting::max(), cfg.n_s).achieved_rate;
        const double bench =
            achievable_rate(ch.h_full, conventional_benchmark(ch.h_full, cfg.power_watts, prob.n0(), cfg.n_s),
                            prob.n0());
        CHECK(r0 >= r5);
        if (s5.case_taken != SolutionCase::Infeasible)
            CHECK(r5 >= rmax - 1e-9);
        CHECK(bench >= r0);
    }
}

TEST_CASE("optimize at the default operating point conceals the true direction")
{
    SystemConfig cfg;
    const ChannelRealization ch = draw_channel(cfg, 0);
    const SrSolution sol = optimize(cfg, ch);
    REQUIRE(sol.case_taken == SolutionCase::SdrPath);
    CHECK(sol.achieved_adpar >= 5.0 - 1e-6);

    const SpatialCovariance r = spatial_covariance(ch.h_full, sol.w_full, cfg.noise_power());
    const auto pattern = beampattern(r, rx_geometry(cfg), cfg.grid_points);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < pattern.size(); ++i)
        if (pattern[i].power > pattern[arg].power)
            arg = i;
    const double peak_deg = pattern[arg].theta * 180.0 / kPi;
    CHECK(std::abs(peak_deg - 90.0) <= 0.5);
    CHECK(std::abs(peak_deg - 60.0) >= 15.0);

    SystemConfig bad = cfg;
    bad.n_s = bad.n_t;
    CHECK_THROWS_AS(optimize(bad, ch), ConfigError);
}
