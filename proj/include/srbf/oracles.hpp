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

// Brute-force reference computations. Nothing on the production path calls
// these; they exist so tests, the acceptance runner and `selftest` can check
// the closed forms against independent routes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "srbf/beamformer.hpp"
#include "srbf/metrics.hpp"
#include "srbf/rng.hpp"

namespace srbf::oracle {

/// Composite Simpson on [a, b] with `panels` (even) subintervals.
template <typename F>
double simpson(F&& f, double a, double b, int panels)
{
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// (1/pi) int_0^pi cos(x sin t) dt by Simpson.
double bessel_j0_integral(double x, int panels = 1 << 14);

/// Power series in long double, 40 terms. Accurate for |x| below ~10.
long double bessel_j0_series(long double x);

/// ADPAR straight from the definition: a^H R a over the direction average
/// of a(t)^H R a(t), the latter by Simpson.
double adpar_quadrature(double theta, const SpatialCovariance& r, const ArrayGeometry& rx,
                        int panels = 1 << 14);

ComplexMat random_complex(Eigen::Index rows, Eigen::Index cols, Xoshiro256ss& rng);

/// B B^H + shift I for a random square B.
ComplexMat random_hpd(Eigen::Index n, Xoshiro256ss& rng, double shift = 0.1);

ComplexMat random_hermitian(Eigen::Index n, Xoshiro256ss& rng);

struct RandomSearch {
    double best_rate = -1.0;
    int samples = 0;
    int projected = 0;  // samples that needed the feasibility repair
};

/// Best rate over `samples` random W' ((N_T-1) x n_s, CN(0,1) entries).
/// Samples violating the trace-ratio constraint get column 0 shifted along
/// t_max until the ratio equals gamma; every sample is then rescaled to
/// ||W'||_F^2 = P.
RandomSearch random_feasible_search(const SrProblem& problem, double gamma, int n_s, int samples,
                                    std::uint64_t seed);

/// Best rate over `samples` random members of the solver's own family
/// W' = U'_{:, I} diag(sqrt(p)): I a uniformly random n_s-subset of the
/// eigenvectors of A' - gamma J', p uniform on the simplex. Draws with
/// sum p_i lambda'_i < 0 are discarded.
RandomSearch random_eigenbasis_search(const SrProblem& problem, double gamma, int n_s, int samples,
                                      std::uint64_t seed);

/// Two-direction power split on a uniform grid of the feasible segment
/// {p1 + p2 = P, p >= 0, p1 l1 + p2 l2 >= 0}. Returns the best rate in bits.
double power_allocation_grid(const ComplexVec& h1, const ComplexVec& h2, double l1, double l2,
                             double p, double n0, int points = 10000);

/// Runs the oracle checks on small random instances, one line each.
/// Returns the number of failures.
int selftest(std::ostream& out);

}  // namespace srbf::oracle
