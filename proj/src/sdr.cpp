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
#include <numeric>

namespace srbf {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Upper bound (bits) on the power-allocation optimum of one index subset.
///
/// Hadamard's inequality gives det(I + N0^-1 S K S) <= prod (1 + p_i K_ii / N0),
/// and the separable problem under sum p = P, sum p lambda >= 0 is bounded by
/// its Lagrange dual
///   D(eta, nu) = nu P + sum_i max_{p >= 0} [ln(1 + p a_i) - (nu - eta lambda_i) p]
/// for any eta >= 0 and nu > max_i eta lambda_i. Any (eta, nu) is a valid
/// bound, so the minimization below only needs to be approximate.
class SeparableBound {
public:
    SeparableBound(const RealVec& a, const RealVec& lambdas, double p)
        : a_(a), lambdas_(lambdas), p_(p)
    {
    }

    double bits() const
    {
        // Golden-section search over eta in [0, eta_hi]; D(., nu*(eta)) is
        // convex, and stopping early only loosens the bound.
        double lambda_scale = lambdas_.cwiseAbs().maxCoeff();
        if (!(lambda_scale > 0.0))
            return over_nu(0.0) / std::log(2.0);
        const double eta_hi = 4.0 * a_.maxCoeff() / lambda_scale + 1.0;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = 0.0;
        double hi = eta_hi;
        double x1 = hi - g * (hi - lo);
        double x2 = lo + g * (hi - lo);
        double f1 = over_nu(x1);
        double f2 = over_nu(x2);
        double best = std::min({over_nu(0.0), f1, f2});
        for (int it = 0; it < 24; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = over_nu(x1);
                best = std::min(best, f1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = over_nu(x2);
                best = std::min(best, f2);
            }
        }
        return best / std::log(2.0);
    }

private:
    double dual(double eta, double nu) const
    {
        double v = nu * p_;
        for (Eigen::Index i = 0; i < a_.size(); ++i) {
            const double c = nu - eta * lambdas_(i);
            if (a_(i) > c)
                v += std::log(a_(i) / c) - 1.0 + c / a_(i);
        }
        return v;
    }

    /// Minimizes D(eta, .): the stationarity condition sum p_i(nu) = P has a
    /// convex decreasing left-hand side, so Newton from the left of the root
    /// increases monotonically onto it.
    double over_nu(double eta) const
    {
        double floor = 0.0;
        for (Eigen::Index i = 0; i < lambdas_.size(); ++i)
            floor = std::max(floor, eta * lambdas_(i));
        // Start where the best channel alone would take all of P.
        double nu = 0.0;
        for (Eigen::Index i = 0; i < a_.size(); ++i) {
            const double b = eta * lambdas_(i);
            nu = std::max(nu, b + 1.0 / (p_ + 1.0 / a_(i)));
        }
        nu = std::max(nu, floor);
        for (int it = 0; it < 50; ++it) {
            double excess = -p_;
            double slope = 0.0;
            for (Eigen::Index i = 0; i < a_.size(); ++i) {
                const double c = nu - eta * lambdas_(i);
                if (a_(i) > c) {
                    excess += 1.0 / c - 1.0 / a_(i);
                    slope -= 1.0 / (c * c);
                }
            }
            if (excess <= 1e-12 * p_ || slope == 0.0)
                break;
            nu -= excess / slope;
        }
        return dual(eta, nu);
    }

    const RealVec& a_;
    const RealVec& lambdas_;
    double p_;
};

struct SubsetSearch {
    const ComplexMat& gains;   // H' U', one column per eigen-direction
    const RealVec& lambdas;    // eigenvalues of A' - gamma J', descending
    RealVec gain_norms;        // ||H' u'_i||^2 / N0
    double p;
    double n0;
    const SdrOptions& options;
    std::uint64_t solved = 0;

    struct Candidate {
        double rate = kNegInf;
        std::vector<int> indices;
        RealVec powers;
    };

    bool feasible(const std::vector<int>& idx) const
    {
        for (int i : idx)
            if (lambdas(i) >= 0.0)
                return true;
        return false;
    }

    /// Solves the power allocation for one subset; -inf when infeasible.
    Candidate evaluate(const std::vector<int>& idx)
    {
        Candidate c;
        if (!feasible(idx))
            return c;
        std::vector<ComplexVec> h;
        RealVec lam(static_cast<Eigen::Index>(idx.size()));
        h.reserve(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            h.emplace_back(gains.col(idx[k]));
            lam(static_cast<Eigen::Index>(k)) = lambdas(idx[k]);
        }
        const PowerAllocation alloc = solve_power_allocation(h, lam, p, n0, options.power);
        ++solved;
        c.rate = alloc.rate;
        c.indices = idx;
        c.powers = alloc.powers;
        return c;
    }

    double bound(const std::vector<int>& idx) const
    {
        RealVec a(static_cast<Eigen::Index>(idx.size()));
        RealVec lam(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) {
            a(static_cast<Eigen::Index>(k)) = gain_norms(idx[k]);
            lam(static_cast<Eigen::Index>(k)) = lambdas(idx[k]);
        }
        return SeparableBound(a, lam, p).bits();
    }

    static bool better(const Candidate& c, const Candidate& incumbent)
    {
        if (c.rate != incumbent.rate)
            return c.rate > incumbent.rate;
        return c.rate != kNegInf && c.indices < incumbent.indices;
    }

    /// Enumerates every |I| = n_s subset in lexicographic order; the best
    /// rate wins and ties go to the lexicographically smaller subset. The
    /// search is seeded with {0, m - n_s + 1, ..., m - 1}, which pairs the
    /// top direction with the most negative lambda' ones and is usually
    /// optimal, so the bound test discards most other subsets.
    Candidate exhaustive(int m, int n_s)
    {
        Candidate best;
        if (lambdas(0) < 0.0)
            return best;
        std::vector<int> seed(static_cast<std::size_t>(n_s));
        seed[0] = 0;
        for (int k = 1; k < n_s; ++k)
            seed[static_cast<std::size_t>(k)] = m - n_s + k;
        best = evaluate(seed);

        std::vector<int> idx(static_cast<std::size_t>(n_s));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            // lambdas are sorted descending, so once the leading index is
            // negative every later subset is infeasible too.
            if (lambdas(idx[0]) < 0.0)
                break;
            if (idx != seed && (!options.prune || bound(idx) >= best.rate)) {
                Candidate c = evaluate(idx);
                if (better(c, best))
                    best = std::move(c);
            }
            // Advance to the next combination.
            int k = n_s - 1;
            while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - n_s + k)
                --k;
            if (k < 0)
                break;
            ++idx[static_cast<std::size_t>(k)];
            for (int j = k + 1; j < n_s; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        return best;
    }

    /// Grows the subset one index at a time, keeping the index whose
    /// enlarged subset has the highest solved rate. Candidates are scanned
    /// in ascending index order (descending lambda'), and only a strictly
    /// higher rate displaces the incumbent.
    Candidate greedy(int m, int n_s)
    {
        std::vector<int> chosen;
        Candidate last;
        for (int step = 0; step < n_s; ++step) {
            Candidate best;
            int pick = -1;
            for (int i = 0; i < m; ++i) {
                if (std::find(chosen.begin(), chosen.end(), i) != chosen.end())
                    continue;
                std::vector<int> trial = chosen;
                trial.insert(std::upper_bound(trial.begin(), trial.end(), i), i);
                Candidate c = evaluate(trial);
                if (c.rate > best.rate) {
                    best = std::move(c);
                    pick = i;
                }
            }
            if (pick < 0)
                return {};
            chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), pick), pick);
            last = std::move(best);
        }
        return last;
    }
};

}  // namespace

SdrResult sdr_solve(const ComplexMat& h_prime, const ComplexMat& a_hat_prime,
                    const ComplexMat& j_prime, double gamma, double p, double n0, int n_s,
                    const SdrOptions& options)
{
    const Eigen::Index m = a_hat_prime.rows();
    if (j_prime.rows() != m || h_prime.cols() != m)
        throw InvalidArgument("sdr_solve: dimension mismatch");
    if (n_s < 1 || n_s > m)
        throw InvalidArgument("sdr_solve: n_s must lie in [1, N_T - 1]");
    if (!(p > 0.0) || !(n0 > 0.0))
        throw InvalidArgument("sdr_solve: p and n0 must be positive");

    const EigResult split = hermitian_evd(a_hat_prime - gamma * j_prime);
    const ComplexMat gains = h_prime * split.vectors;

    SubsetSearch search{gains, split.values, RealVec(), p, n0, options};
    search.gain_norms = gains.colwise().squaredNorm().transpose() / n0;

    const std::uint64_t count = choose(static_cast<int>(m), n_s);
    const bool exhaustive = count <= options.exhaustive_limit;
    SubsetSearch::Candidate best = exhaustive ? search.exhaustive(static_cast<int>(m), n_s)
                                              : search.greedy(static_cast<int>(m), n_s);
    if (best.rate == kNegInf)
        throw NumericalFailure("sdr_solve: no index subset satisfies the ADPAR constraint "
                               "although gamma < lambda_max");

    SdrResult out;
    out.indices = best.indices;
    out.powers = best.powers;
    out.lambda_prime = split.values;
    out.exhaustive = exhaustive;
    out.subsets_solved = search.solved;

    // W' = U'_{:, I} diag(sqrt(p))
    out.w_prime.resize(m, n_s);
    for (int k = 0; k < n_s; ++k) {
        const double pk = std::max(0.0, best.powers(k));
        out.w_prime.col(k) = std::sqrt(pk) * split.vectors.col(best.indices[static_cast<std::size_t>(k)]);
    }
    const ComplexMat hw = h_prime * out.w_prime;
    ComplexMat c = hw * hw.adjoint() / n0;
    c.diagonal().array() += 1.0;
    c = 0.5 * (c + c.adjoint());
    out.rate = std::max(0.0, logdet_pd(c) / std::log(2.0));
    return out;
}

}  // namespace srbf
