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

#include "srbf/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "srbf/channel.hpp"

namespace srbf::oracle {

double bessel_j0_integral(double x, int panels)
{
    return simpson([x](double t) { return std::cos(x * std::sin(t)); }, 0.0, kPi, panels) / kPi;
}

long double bessel_j0_series(long double x)
{
    const long double q = -x * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 40; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return sum;
}

double adpar_quadrature(double theta, const SpatialCovariance& r, const ArrayGeometry& rx, int panels)
{
    auto power = [&](double t) {
        const ComplexVec a = steering_vector(rx, std::clamp(t, 0.0, kPi));
        return (a.adjoint() * r.r * a)(0, 0).real();
    };
    const double average = simpson(power, 0.0, kPi, panels) / kPi;
    return power(theta) / average;
}

ComplexMat random_complex(Eigen::Index rows, Eigen::Index cols, Xoshiro256ss& rng)
{
    ComplexMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = rng.complex_normal();
    return m;
}

ComplexMat random_hpd(Eigen::Index n, Xoshiro256ss& rng, double shift)
{
    const ComplexMat b = random_complex(n, n, rng);
    ComplexMat m = b * b.adjoint();
    m.diagonal().array() += shift;
    return 0.5 * (m + m.adjoint());
}

ComplexMat random_hermitian(Eigen::Index n, Xoshiro256ss& rng)
{
    const ComplexMat b = random_complex(n, n, rng);
    return 0.5 * (b + b.adjoint());
}

RandomSearch random_feasible_search(const SrProblem& problem, double gamma, int n_s, int samples,
                                    std::uint64_t seed)
{
    const ComplexMat& a = problem.forms().a_hat_prime;
    const ComplexMat& j = problem.forms().j_prime;
    const ComplexMat m = a - gamma * j;
    const ComplexVec t = problem.bounds().t_max.normalized();
    const double tmt = (t.adjoint() * m * t)(0, 0).real();
    const double p = problem.power();

    RandomSearch out;
    Xoshiro256ss rng(seed);
    for (int k = 0; k < samples; ++k) {
        ComplexMat w = random_complex(m.rows(), n_s, rng);
        const double f = (w.adjoint() * m * w).trace().real();
        if (f < 0.0) {
            if (!(tmt > 0.0))
                continue;
            // f(s) = f + 2 s Re(t^H M w0) + s^2 t^H M t, take the positive root.
            const double b = 2.0 * (t.adjoint() * m * w.col(0))(0, 0).real();
            const double s = (-b + std::sqrt(b * b - 4.0 * tmt * f)) / (2.0 * tmt);
            w.col(0) += s * t;
            ++out.projected;
        }
        w *= std::sqrt(p) / w.norm();
        const double rate = achievable_rate(problem.h(), Precoder(problem.v_n() * w, p), problem.n0());
        out.best_rate = std::max(out.best_rate, rate);
        ++out.samples;
    }
    return out;
}

RandomSearch random_eigenbasis_search(const SrProblem& problem, double gamma, int n_s, int samples,
                                      std::uint64_t seed)
{
    const EigResult e = hermitian_evd(problem.forms().a_hat_prime - gamma * problem.forms().j_prime);
    const ComplexMat g = problem.h_prime() * e.vectors;
    const auto m = static_cast<int>(e.values.size());
    const double n0 = problem.n0();

    RandomSearch out;
    Xoshiro256ss rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int k = 0; k < samples; ++k) {
        for (int i = 0; i < m; ++i)
            perm[static_cast<std::size_t>(i)] = i;
        // Partial Fisher-Yates for the first n_s slots.
        for (int i = 0; i < n_s; ++i) {
            const int j = i + static_cast<int>(rng.uniform() * (m - i));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        RealVec p(n_s);
        for (int i = 0; i < n_s; ++i)
            p(i) = -std::log(1.0 - rng.uniform());
        p *= problem.power() / p.sum();
        double slack = 0.0;
        ComplexMat gs(g.rows(), n_s);
        for (int i = 0; i < n_s; ++i) {
            slack += p(i) * e.values(perm[static_cast<std::size_t>(i)]);
            gs.col(i) = std::sqrt(p(i)) * g.col(perm[static_cast<std::size_t>(i)]);
        }
        if (slack < 0.0)
            continue;
        ComplexMat c = gs * gs.adjoint() / n0;
        c.diagonal().array() += 1.0;
        out.best_rate = std::max(out.best_rate, logdet_pd(0.5 * (c + c.adjoint())) / std::log(2.0));
        ++out.samples;
    }
    return out;
}

double power_allocation_grid(const ComplexVec& h1, const ComplexVec& h2, double l1, double l2,
                             double p, double n0, int points)
{
    double lo = 0.0;
    double hi = p;
    if (l1 == l2) {
        if (l1 < 0.0)
            return -std::numeric_limits<double>::infinity();
    } else {
        const double edge = -p * l2 / (l1 - l2);
        if (l1 > l2)
            lo = std::max(lo, edge);
        else
            hi = std::min(hi, edge);
    }
    if (lo > hi)
        return -std::numeric_limits<double>::infinity();

    // det(I + G diag(p) G^H / N0) = det(I_2 + diag(p) G^H G / N0).
    const double g11 = h1.squaredNorm();
    const double g22 = h2.squaredNorm();
    const double g12 = std::norm(h1.dot(h2));
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double p1 = (points == 1) ? lo : lo + (hi - lo) * i / (points - 1);
        const double p2 = p - p1;
        const double det = (1.0 + p1 * g11 / n0) * (1.0 + p2 * g22 / n0) - p1 * p2 * g12 / (n0 * n0);
        best = std::max(best, std::log2(det));
    }
    return best;
}

namespace {

struct Reporter {
    std::ostream& out;
    int failures = 0;

    void check(bool ok, const std::string& name, const std::string& detail)
    {
        out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        if (!ok)
            ++failures;
    }
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

SystemConfig small_config(int n_t, int n_r, int n_s, std::uint64_t seed)
{
    SystemConfig c;
    c.n_t = n_t;
    c.n_r = n_r;
    c.n_s = n_s;
    c.base_seed = seed;
    return c;
}

}  // namespace

int selftest(std::ostream& out)
{
    Reporter rep{out};
    Xoshiro256ss rng(20260501);

    {
        double worst = 0.0;
        for (double x : {0.1, 1.0, kPi, 10.0})
            worst = std::max(worst, std::abs(bessel_j0(x) - bessel_j0_integral(x)));
        rep.check(worst <= 1e-9, "bessel_j0 vs integral", "max err " + sci(worst));
    }

    {
        double worst = 0.0;
        for (int n_r : {2, 4, 8}) {
            const ArrayGeometry rx(n_r, 0.5);
            const SpatialCovariance r{random_hpd(n_r, rng)};
            const double theta = 0.2 + 2.7 * rng.uniform();
            const double trace_form = adpar(theta, r, rx);
            const double quad = adpar_quadrature(theta, r, rx);
            worst = std::max(worst, std::abs(trace_form - quad) / std::abs(quad));
        }
        rep.check(worst <= 1e-6, "adpar trace form vs quadrature", "max rel err " + sci(worst));
    }

    {
        double worst = 0.0;
        for (int n : {3, 5, 8}) {
            const ComplexMat a = random_hermitian(n, rng);
            const ComplexMat b = random_hpd(n, rng);
            const GevdResult g = gevd(a, b);
            Eigen::ComplexEigenSolver<ComplexMat> ces(b.inverse() * a);
            std::vector<double> ref;
            for (Eigen::Index i = 0; i < n; ++i)
                ref.push_back(ces.eigenvalues()(i).real());
            std::sort(ref.rbegin(), ref.rend());
            for (int i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(g.eigenvalues(i) - ref[static_cast<std::size_t>(i)]) /
                                            std::max(1.0, std::abs(ref[static_cast<std::size_t>(i)])));
        }
        rep.check(worst <= 1e-8, "gevd vs inv(B) A eigenvalues", "max rel err " + sci(worst));
    }

    {
        int violations = 0;
        for (std::uint64_t trial = 0; trial < 3; ++trial) {
            const SystemConfig c = small_config(6, 4, 2, 11);
            const SrProblem prob(c, draw_channel(c, trial));
            const auto& b = prob.bounds();
            for (int k = 0; k < 100; ++k) {
                const ComplexMat w = random_complex(c.n_t - 1, c.n_s, rng);
                const double rho = trace_ratio(w, prob.forms().a_hat_prime, prob.forms().j_prime);
                if (rho < b.lambda_min - 1e-9 || rho > b.lambda_max + 1e-9)
                    ++violations;
            }
        }
        rep.check(violations == 0, "trace ratio within GEVD bounds",
                  std::to_string(violations) + " of 300 outside");
    }

    {
        double worst = 0.0;
        for (std::uint64_t trial = 0; trial < 3; ++trial) {
            const SystemConfig c = small_config(5, 4, 2, 3);
            const SrProblem prob(c, draw_channel(c, trial));
            const double gamma = 0.5 * (prob.bounds().lambda_min + prob.bounds().lambda_max);
            const EigResult e = hermitian_evd(prob.forms().a_hat_prime - gamma * prob.forms().j_prime);
            const ComplexMat g = prob.h_prime() * e.vectors;
            const Eigen::Index last = e.values.size() - 1;
            RealVec lam(2);
            lam << e.values(0), e.values(last);
            const PowerAllocation fw =
                solve_power_allocation({g.col(0), g.col(last)}, lam, prob.power(), prob.n0());
            const double grid = power_allocation_grid(g.col(0), g.col(last), lam(0), lam(1), prob.power(),
                                                      prob.n0());
            worst = std::max(worst, std::abs(fw.rate - grid));
        }
        rep.check(worst <= 1e-4, "power allocation vs segment grid", "max abs err " + sci(worst));
    }

    {
        const SystemConfig c = small_config(5, 4, 2, 5);
        const SrProblem prob(c, draw_channel(c, 0));
        const double gamma = 0.5 * (prob.bounds().lambda_min + prob.bounds().lambda_max);
        const SrSolution sol = prob.solve(GammaSetting::of(gamma), 2);
        const RandomSearch rs = random_eigenbasis_search(prob, gamma, 2, 10000, 99);
        rep.check(rs.samples > 0 && sol.achieved_rate >= rs.best_rate - 1e-6,
                  "solver vs random eigenbasis precoders",
                  "solver " + sci(sol.achieved_rate) + " random " + sci(rs.best_rate));
    }

    return rep.failures;
}

}  // namespace srbf::oracle
