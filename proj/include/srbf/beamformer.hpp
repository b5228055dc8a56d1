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
#include <stdexcept>
#include <string_view>
#include <vector>

#include "srbf/channel.hpp"
#include "srbf/config.hpp"
#include "srbf/metrics.hpp"
#include "srbf/numerics.hpp"

namespace srbf {

/// The power-allocation polytope {p >= 0, sum p = P, sum p lambda' >= 0}
/// is empty.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolutionCase { Infeasible, ClosedFormMax, WaterFillingInactive, SdrPath };

std::string_view to_string(SolutionCase c);

/// Case boundary tolerance on gamma comparisons against lambda_min/max.
inline constexpr double kGammaCaseTolerance = 1e-9;

struct SrSolution {
    Precoder w_full;       // V_N W'
    ComplexMat w_prime;    // (N_T - 1) x N_S
    SolutionCase case_taken = SolutionCase::Infeasible;
    double achieved_rate = 0.0;   // bits/s/Hz
    double achieved_adpar = 0.0;  // rho(phi_hat) of the assembled W; NaN if infeasible
    double gamma = 0.0;           // resolved threshold
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::vector<int> sdr_indices;  // chosen eigen-directions (SdrPath only), 0-based
    RealVec sdr_powers;            // matching powers p_i (SdrPath only)
};

/// Orthonormal basis V_N (N_T x N_T-1) of the null space of a_T(phi)^H,
/// taken from the right singular vectors of a_T(phi)^H. Needs N_T >= 2.
ComplexMat null_space_basis(const ArrayGeometry& tx, double phi);

struct AdparBounds {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    ComplexVec t_min;
    ComplexVec t_max;
};

/// Extreme generalized eigenpairs of {A', J'}; they bound the trace-ratio
/// ADPAR of every W'.
AdparBounds adpar_bounds(const ComplexMat& a_hat_prime, const ComplexMat& j_prime);

/// W' whose first column is sqrt(P) t / ||t|| and whose remaining N_S - 1
/// columns are zero, so W' W'^H = P t t^H / (t^H t).
ComplexMat closed_form_extremal(const ComplexVec& t, double p, int n_s);

/// Rate-optimal W' without an ADPAR constraint: top-N_S right singular
/// vectors of H' with water-filled powers.
ComplexMat water_filling(const ComplexMat& h_prime, double p, double n0, int n_s);

struct PowerAllocationOptions {
    int max_iterations = 10000;
    double relative_gap = 1e-8;
};

struct PowerAllocation {
    RealVec powers;
    double rate = 0.0;  // bits/s/Hz
    int iterations = 0;
    double gap = 0.0;   // final Frank-Wolfe duality gap (nats)
};

/// Maximizes log2 det(I + N0^-1 sum_i p_i h_i h_i^H) over
/// {p >= 0, sum p = P, sum p_i lambda_i >= 0} by away-step Frank-Wolfe with
/// exact line search. The linear oracle enumerates the polytope vertices:
/// P e_i with lambda_i >= 0, plus the points on edges (i, j) where the
/// halfspace is tight. Throws InfeasibleError when every lambda_i < 0.
PowerAllocation solve_power_allocation(const std::vector<ComplexVec>& gains,
                                       const RealVec& lambdas, double p, double n0,
                                       const PowerAllocationOptions& options = {});

struct SdrOptions {
    /// Index subsets are enumerated exhaustively up to this many
    /// combinations and grown greedily beyond it.
    std::uint64_t exhaustive_limit = 100000;
    /// Skip subsets whose separable rate bound cannot beat the incumbent.
    bool prune = true;
    PowerAllocationOptions power;
};

struct SdrResult {
    ComplexMat w_prime;
    double rate = 0.0;
    std::vector<int> indices;
    RealVec powers;
    RealVec lambda_prime;  // eigenvalues of A' - gamma J', descending
    bool exhaustive = true;
    std::uint64_t subsets_solved = 0;
};

/// Rate maximization under tr(W'W'^H) = P and trace-ratio ADPAR >= gamma
/// through Z = U' diag(p) U'^H, with U' the eigenvectors of A' - gamma J'.
/// Requires gamma strictly between the ADPAR bounds.
SdrResult sdr_solve(const ComplexMat& h_prime, const ComplexMat& a_hat_prime,
                    const ComplexMat& j_prime, double gamma, double p, double n0, int n_s,
                    const SdrOptions& options = {});

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t choose(int n, int k);

/**
 * Per-realization state shared by every gamma: the null-space basis, the
 * projected channel H' = H V_N, the ADPAR forms and their GEVD bounds.
 */
class SrProblem {
public:
    SrProblem(const SystemConfig& cfg, const ChannelRealization& channel);

    /// Case dispatch on the resolved gamma:
    ///   gamma > lambda_max + tol      Infeasible
    ///   |gamma - lambda_max| <= tol   ClosedFormMax
    ///   gamma <= lambda_min + tol     WaterFillingInactive
    ///   otherwise                     SdrPath
    SrSolution solve(const GammaSetting& gamma, int n_s, const SdrOptions& options = {}) const;

    double resolve_gamma(const GammaSetting& gamma) const;

    const ComplexMat& h() const noexcept { return h_; }
    const ComplexMat& v_n() const noexcept { return v_n_; }
    const ComplexMat& h_prime() const noexcept { return h_prime_; }
    const ProjectedForms& forms() const noexcept { return forms_; }
    const AdparBounds& bounds() const noexcept { return bounds_; }
    const ArrayGeometry& rx() const noexcept { return rx_; }
    double n0() const noexcept { return n0_; }
    double power() const noexcept { return power_; }
    double phi_hat() const noexcept { return phi_hat_; }

private:
    ComplexMat h_;
    ArrayGeometry rx_;
    double n0_;
    double power_;
    double phi_hat_;
    ComplexMat v_n_;
    ComplexMat h_prime_;
    ProjectedForms forms_;
    AdparBounds bounds_;
};

/// SrProblem(cfg, channel).solve(cfg.gamma, cfg.n_s).
SrSolution optimize(const SystemConfig& cfg, const ChannelRealization& channel);

/// Conventional benchmark: water-filling on the full channel with no
/// sensing-resistance constraints.
Precoder conventional_benchmark(const ComplexMat& h, double p, double n0, int n_s);

}  // namespace srbf
