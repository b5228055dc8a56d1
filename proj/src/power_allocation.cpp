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

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace srbf {
namespace {

/// Objective state at one point: f = ln det(I + N0^-1 G diag(p) G^H), the
/// gradient df/dp_i = h_i^H M^-1 h_i with M = N0 I + G diag(p) G^H, and
/// X = L^-1 G for the line search.
struct Evaluation {
    double f = 0.0;
    RealVec grad;
    ComplexMat x;
};

class LogDetObjective {
public:
    LogDetObjective(const std::vector<ComplexVec>& gains, double n0)
        : n0_(n0)
    {
        const auto rows = gains.front().size();
        g_.resize(rows, static_cast<Eigen::Index>(gains.size()));
        for (std::size_t i = 0; i < gains.size(); ++i) {
            if (gains[i].size() != rows)
                throw InvalidArgument("solve_power_allocation: gain vectors differ in length");
            g_.col(static_cast<Eigen::Index>(i)) = gains[i];
        }
    }

    Evaluation evaluate(const RealVec& p) const
    {
        const Eigen::Index rows = g_.rows();
        ComplexMat m = g_ * p.cast<Complex>().asDiagonal() * g_.adjoint();
        m.diagonal().array() += n0_;
        Eigen::LLT<ComplexMat> llt(m);
        if (llt.info() != Eigen::Success)
            throw NumericalFailure("solve_power_allocation: covariance lost definiteness");

        Evaluation e;
        const auto& l = llt.matrixLLT();
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < rows; ++i)
            logdet += std::log(l(i, i).real());
        e.f = 2.0 * logdet - static_cast<double>(rows) * std::log(n0_);
        e.x = llt.matrixL().solve(g_);
        e.grad = e.x.colwise().squaredNorm().transpose();
        return e;
    }

    double value(const RealVec& p) const { return evaluate(p).f; }

private:
    double n0_;
    ComplexMat g_;
};

/// Maximizes phi(t) = sum_k ln(1 + t mu_k) over [0, t_max], where mu are the
/// eigenvalues of L^-1 D L^-H for the move direction D = G diag(d) G^H.
double exact_line_search(const Evaluation& at, const RealVec& d, double t_max)
{
    ComplexMat c = at.x * d.cast<Complex>().asDiagonal() * at.x.adjoint();
    c = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMat> es(c, Eigen::EigenvaluesOnly);
    const RealVec& mu = es.eigenvalues();

    auto slope = [&](double t) {
        double s = 0.0;
        for (Eigen::Index k = 0; k < mu.size(); ++k)
            s += mu(k) / (1.0 + t * mu(k));
        return s;
    };
    auto curvature = [&](double t) {
        double s = 0.0;
        for (Eigen::Index k = 0; k < mu.size(); ++k) {
            const double q = mu(k) / (1.0 + t * mu(k));
            s -= q * q;
        }
        return s;
    };

    if (slope(0.0) <= 0.0)
        return 0.0;
    if (slope(t_max) >= 0.0)
        return t_max;

    // Safeguarded Newton on the decreasing slope.
    double lo = 0.0;
    double hi = t_max;
    double t = 0.5 * t_max;
    for (int it = 0; it < 100; ++it) {
        const double s = slope(t);
        if (s > 0.0)
            lo = t;
        else
            hi = t;
        if (hi - lo <= 1e-15 * t_max || s == 0.0)
            break;
        const double c2 = curvature(t);
        double next = (c2 < 0.0) ? t - s / c2 : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        t = next;
    }
    return t;
}

std::vector<RealVec> polytope_vertices(const RealVec& lambdas, double p)
{
    const Eigen::Index n = lambdas.size();
    std::vector<RealVec> vertices;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambdas(i) >= 0.0) {
            RealVec v = RealVec::Zero(n);
            v(i) = p;
            vertices.push_back(std::move(v));
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(lambdas(i) > 0.0))
            continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!(lambdas(j) < 0.0))
                continue;
            const double span = lambdas(i) - lambdas(j);
            RealVec v = RealVec::Zero(n);
            v(i) = p * (-lambdas(j)) / span;
            v(j) = p * lambdas(i) / span;
            vertices.push_back(std::move(v));
        }
    }
    return vertices;
}

}  // namespace

PowerAllocation solve_power_allocation(const std::vector<ComplexVec>& gains,
                                       const RealVec& lambdas, double p, double n0,
                                       const PowerAllocationOptions& options)
{
    if (gains.empty() || static_cast<Eigen::Index>(gains.size()) != lambdas.size())
        throw InvalidArgument("solve_power_allocation: need one lambda per gain vector");
    if (!(p > 0.0) || !(n0 > 0.0))
        throw InvalidArgument("solve_power_allocation: p and n0 must be positive");
    if (lambdas.maxCoeff() < 0.0)
        throw InfeasibleError("solve_power_allocation: every lambda' is negative, "
                              "so sum p_i lambda'_i >= 0 has no solution on the simplex");

    const LogDetObjective objective(gains, n0);
    const std::vector<RealVec> vertices = polytope_vertices(lambdas, p);
    const std::size_t nv = vertices.size();

    // Start from the best vertex.
    std::size_t start = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < nv; ++v) {
        const double f = objective.value(vertices[v]);
        if (f > best) {
            best = f;
            start = v;
        }
    }

    std::vector<double> weight(nv, 0.0);
    weight[start] = 1.0;
    RealVec x = vertices[start];

    PowerAllocation out;
    Evaluation e = objective.evaluate(x);
    int iter = 0;
    double gap = 0.0;
    for (; iter < options.max_iterations; ++iter) {
        // Linear oracle over the vertex list, plus the away vertex among
        // the active set.
        std::size_t fw = 0;
        double fw_score = -std::numeric_limits<double>::infinity();
        std::size_t away = nv;
        double away_score = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < nv; ++v) {
            const double score = e.grad.dot(vertices[v]);
            if (score > fw_score) {
                fw_score = score;
                fw = v;
            }
            if (weight[v] > 0.0 && score < away_score) {
                away_score = score;
                away = v;
            }
        }
        const double current = e.grad.dot(x);
        gap = fw_score - current;
        if (gap <= options.relative_gap * std::abs(e.f) || gap <= 0.0)
            break;

        const double away_gap = current - away_score;
        RealVec d;
        double t_max = 1.0;
        bool fw_step = true;
        if (gap >= away_gap || weight[away] >= 1.0) {
            d = vertices[fw] - x;
        } else {
            fw_step = false;
            d = x - vertices[away];
            t_max = weight[away] / (1.0 - weight[away]);
        }

        const double t = exact_line_search(e, d, t_max);
        if (t <= 0.0)
            break;

        if (fw_step) {
            for (auto& w : weight)
                w *= (1.0 - t);
            weight[fw] += t;
            if (t >= 1.0) {
                std::fill(weight.begin(), weight.end(), 0.0);
                weight[fw] = 1.0;
            }
        } else {
            for (auto& w : weight)
                w *= (1.0 + t);
            weight[away] -= t;
            if (t >= t_max)
                weight[away] = 0.0;
        }

        // Rebuild the iterate from its vertex weights to keep sum p = P.
        double total = 0.0;
        for (double w : weight)
            total += w;
        x.setZero();
        for (std::size_t v = 0; v < nv; ++v) {
            if (weight[v] > 0.0) {
                weight[v] /= total;
                x += weight[v] * vertices[v];
            }
        }
        e = objective.evaluate(x);
    }

    out.powers = x;
    out.rate = e.f / std::log(2.0);
    out.iterations = iter;
    out.gap = gap;
    return out;
}

}  // namespace srbf
