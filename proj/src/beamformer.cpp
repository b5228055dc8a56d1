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

#include "srbf/beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srbf {

std::string_view to_string(SolutionCase c)
{
    switch (c) {
    case SolutionCase::Infeasible: return "Infeasible";
    case SolutionCase::ClosedFormMax: return "ClosedFormMax";
    case SolutionCase::WaterFillingInactive: return "WaterFillingInactive";
    case SolutionCase::SdrPath: return "SdrPath";
    }
    return "?";
}

std::uint64_t choose(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (r > std::numeric_limits<std::uint64_t>::max() / num)
            return std::numeric_limits<std::uint64_t>::max();
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

ComplexMat null_space_basis(const ArrayGeometry& tx, double phi)
{
    if (tx.num_elements < 2)
        throw InvalidArgument("null_space_basis: N_T = 1 leaves no null space for a_T(phi)^H");
    const ComplexVec a = steering_vector(tx, phi);
    const SvdResult s = svd(a.adjoint());
    // s.s(0) = sqrt(N_T) pairs with v_max = s.v.col(0); the rest span the null space.
    return s.v.rightCols(tx.num_elements - 1);
}

AdparBounds adpar_bounds(const ComplexMat& a_hat_prime, const ComplexMat& j_prime)
{
    const GevdResult g = gevd(a_hat_prime, j_prime);
    const Eigen::Index n = g.eigenvalues.size();
    AdparBounds b;
    b.lambda_max = g.eigenvalues(0);
    b.lambda_min = g.eigenvalues(n - 1);
    b.t_max = g.eigenvectors.col(0);
    b.t_min = g.eigenvectors.col(n - 1);
    return b;
}

ComplexMat closed_form_extremal(const ComplexVec& t, double p, int n_s)
{
    const double norm = t.norm();
    if (!(norm > 0.0))
        throw InvalidArgument("closed_form_extremal: t must be nonzero");
    if (n_s < 1)
        throw InvalidArgument("closed_form_extremal: n_s must be positive");
    ComplexMat w = ComplexMat::Zero(t.size(), n_s);
    w.col(0) = (std::sqrt(p) / norm) * t;
    return w;
}

ComplexMat water_filling(const ComplexMat& h_prime, double p, double n0, int n_s)
{
    if (!(p > 0.0) || !(n0 > 0.0))
        throw InvalidArgument("water_filling: p and n0 must be positive");
    const Eigen::Index rank_cap = std::min(h_prime.rows(), h_prime.cols());
    if (n_s < 1 || n_s > rank_cap)
        throw InvalidArgument("water_filling: n_s must lie in [1, min(rows, cols)]");

    const SvdResult s = svd(h_prime);
    RealVec gain(n_s);
    for (int k = 0; k < n_s; ++k)
        gain(k) = s.s(k) * s.s(k);

    RealVec power = RealVec::Zero(n_s);
    if (!(gain(0) > 0.0)) {
        power.setConstant(p / n_s);
    } else {
        auto allocate = [&](double level) {
            RealVec out = RealVec::Zero(n_s);
            for (int k = 0; k < n_s; ++k)
                if (gain(k) > 0.0)
                    out(k) = std::max(0.0, level - n0 / gain(k));
            return out;
        };
        double lo = 0.0;
        double hi = p + n0 / gain(0);
        for (int k = 0; k < n_s; ++k)
            if (gain(k) > 0.0)
                hi = std::max(hi, p + n0 / gain(k));
        for (int it = 0; it < 400; ++it) {
            const double mid = 0.5 * (lo + hi);
            power = allocate(mid);
            const double total = power.sum();
            if (std::abs(total - p) <= 1e-12 * p)
                break;
            (total > p ? hi : lo) = mid;
        }
        power *= p / power.sum();
    }

    ComplexMat w(h_prime.cols(), n_s);
    for (int k = 0; k < n_s; ++k)
        w.col(k) = std::sqrt(power(k)) * s.v.col(k);
    return w;
}

Precoder conventional_benchmark(const ComplexMat& h, double p, double n0, int n_s)
{
    return Precoder(water_filling(h, p, n0, n_s), p);
}

SrProblem::SrProblem(const SystemConfig& cfg, const ChannelRealization& channel)
    : h_(channel.h_full),
      rx_(rx_geometry(cfg)),
      n0_(cfg.power_watts * std::norm(channel.alpha) / cfg.snr_linear()),
      power_(cfg.power_watts),
      phi_hat_(cfg.phi_hat_rad())
{
    const ArrayGeometry tx = tx_geometry(cfg);
    if (h_.rows() != cfg.n_r || h_.cols() != cfg.n_t)
        throw InvalidArgument("SrProblem: channel dimensions do not match the configuration");
    v_n_ = null_space_basis(tx, channel.true_angle_rad);
    h_prime_ = h_ * v_n_;
    forms_ = projected_forms(h_, v_n_, rx_, n0_, power_, phi_hat_);
    bounds_ = adpar_bounds(forms_.a_hat_prime, forms_.j_prime);
}

double SrProblem::resolve_gamma(const GammaSetting& gamma) const
{
    switch (gamma.kind) {
    case GammaSetting::Kind::Max: return bounds_.lambda_max;
    case GammaSetting::Kind::Min: return bounds_.lambda_min;
    case GammaSetting::Kind::Value: break;
    }
    return gamma.value;
}

SrSolution SrProblem::solve(const GammaSetting& gamma_setting, int n_s,
                            const SdrOptions& options) const
{
    const Eigen::Index dim = v_n_.cols();
    if (n_s < 1 || n_s > std::min<Eigen::Index>(dim, h_.rows()))
        throw InvalidArgument("SrProblem::solve: n_s must lie in [1, min(N_T - 1, N_R)]");

    SrSolution sol;
    sol.gamma = resolve_gamma(gamma_setting);
    sol.lambda_min = bounds_.lambda_min;
    sol.lambda_max = bounds_.lambda_max;

    const double tol = kGammaCaseTolerance;
    if (sol.gamma > bounds_.lambda_max + tol) {
        sol.case_taken = SolutionCase::Infeasible;
        sol.w_prime = ComplexMat::Zero(dim, n_s);
        sol.w_full = Precoder(ComplexMat::Zero(h_.cols(), n_s), 0.0);
        sol.achieved_rate = 0.0;
        sol.achieved_adpar = std::numeric_limits<double>::quiet_NaN();
        return sol;
    }

    if (std::abs(sol.gamma - bounds_.lambda_max) <= tol) {
        sol.case_taken = SolutionCase::ClosedFormMax;
        sol.w_prime = closed_form_extremal(bounds_.t_max, power_, n_s);
    } else if (sol.gamma <= bounds_.lambda_min + tol) {
        sol.case_taken = SolutionCase::WaterFillingInactive;
        sol.w_prime = water_filling(h_prime_, power_, n0_, n_s);
    } else {
        sol.case_taken = SolutionCase::SdrPath;
        SdrResult sdr = sdr_solve(h_prime_, forms_.a_hat_prime, forms_.j_prime, sol.gamma, power_,
                                  n0_, n_s, options);
        sol.w_prime = std::move(sdr.w_prime);
        sol.sdr_indices = std::move(sdr.indices);
        sol.sdr_powers = std::move(sdr.powers);
    }

    sol.w_full = Precoder(v_n_ * sol.w_prime, power_);
    sol.achieved_rate = achievable_rate(h_, sol.w_full, n0_);
    sol.achieved_adpar = adpar(phi_hat_, spatial_covariance(h_, sol.w_full, n0_), rx_);
    return sol;
}

SrSolution optimize(const SystemConfig& cfg, const ChannelRealization& channel)
{
    cfg.validate();
    return SrProblem(cfg, channel).solve(cfg.gamma, cfg.n_s);
}

}  // namespace srbf
