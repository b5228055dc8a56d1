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

#include "srbf/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "srbf/channel.hpp"

#ifndef SRBF_BUILD_TAG
#define SRBF_BUILD_TAG "unknown"
#endif

namespace srbf {
namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Accumulates linear beampattern power over trials.
struct PatternSum {
    std::vector<double> theta;
    std::vector<double> power;
    std::size_t trials = 0;
    std::size_t skipped = 0;

    void add(const std::vector<BeampatternSample>& s)
    {
        if (power.empty()) {
            theta.resize(s.size());
            power.assign(s.size(), 0.0);
            for (std::size_t i = 0; i < s.size(); ++i)
                theta[i] = s[i].theta;
        }
        for (std::size_t i = 0; i < s.size(); ++i)
            power[i] += s[i].power;
        ++trials;
    }

    PatternResult finish(const std::string& id, double snr_db) const
    {
        PatternResult out;
        out.pattern_id = id;
        out.snr_db = snr_db;
        out.samples.resize(power.size());
        for (std::size_t i = 0; i < power.size(); ++i)
            out.samples[i] = {theta[i], power[i] / static_cast<double>(std::max<std::size_t>(trials, 1)), 0.0};
        normalize_db(out.samples);
        return out;
    }
};

SystemConfig with_snr(SystemConfig cfg, double snr_db)
{
    cfg.snr_db = snr_db;
    return cfg;
}

nlohmann::ordered_json base_metadata(const std::string& run_id, const RunConfig& cfg)
{
    nlohmann::ordered_json m;
    m["run"] = run_id;
    m["build_tag"] = build_tag();
    m["seed"] = cfg.system.base_seed;
    m["trials"] = cfg.system.trials;
    m["config"] = to_json(cfg);
    return m;
}

/// Per-trial rates for one curve at every x; infeasible entries hold 0.
struct Curve {
    std::string id;
    std::vector<std::vector<double>> samples;  // [x][trial]
    std::vector<std::size_t> infeasible;

    Curve(std::string name, std::size_t points, std::size_t trials)
        : id(std::move(name)), samples(points, std::vector<double>(trials, 0.0)), infeasible(points, 0)
    {
    }

    SweepResult finish(const std::vector<double>& xs) const
    {
        SweepResult r;
        r.sweep_id = id;
        for (std::size_t i = 0; i < xs.size(); ++i)
            r.points.push_back(summarize(xs[i], samples[i]));
        r.infeasible = infeasible;
        return r;
    }
};

int effective_ns(const SystemConfig& cfg)
{
    return std::min({cfg.n_s, cfg.n_t - 1, cfg.n_r});
}

}  // namespace

std::string build_tag()
{
    return SRBF_BUILD_TAG;
}

SweepPoint summarize(double x, const std::vector<double>& samples)
{
    SweepPoint p;
    p.x = x;
    p.trial_count = samples.size();
    if (samples.empty())
        return p;
    double sum = 0.0;
    for (double v : samples)
        sum += v;
    p.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples)
            ss += (v - p.mean) * (v - p.mean);
        const double n = static_cast<double>(samples.size());
        p.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return p;
}

double beamscan_estimate(const SpatialCovariance& r, const ArrayGeometry& rx, int grid_points)
{
    if (grid_points < 2)
        throw InvalidArgument("beamscan_estimate: grid_points must be at least 2");
    auto power = [&](double theta) {
        const ComplexVec a = steering_vector(rx, std::clamp(theta, 0.0, kPi));
        return (a.adjoint() * r.r * a)(0, 0).real();
    };

    const double step = kPi / (grid_points - 1);
    int best_k = 0;
    double best_p = power(0.0);
    for (int k = 1; k < grid_points; ++k) {
        const double theta = (k == grid_points - 1) ? kPi : k * step;
        const double p = power(theta);
        if (p > best_p) {
            best_p = p;
            best_k = k;
        }
    }
    const double grid_theta = (best_k == grid_points - 1) ? kPi : best_k * step;

    double lo = std::max(0.0, grid_theta - step);
    double hi = std::min(kPi, grid_theta + step);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = power(x1);
    double f2 = power(x2);
    while (hi - lo > 1e-4) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = power(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = power(x2);
        }
    }
    const double refined = 0.5 * (lo + hi);
    return power(refined) > best_p ? refined : grid_theta;
}

FigureRun run_fig2(const RunConfig& cfg, const HarnessOptions& options)
{
    cfg.system.validate();
    cfg.sweep.validate();
    const auto& snrs = cfg.sweep.snr_grid_db;
    const auto trials = static_cast<std::size_t>(cfg.system.trials);

    FigureRun run;
    run.run_id = "fig2";
    run.metadata = base_metadata(run.run_id, cfg);

    for (const auto& [n_t, n_r] : cfg.sweep.antenna_configs) {
        SystemConfig sys = cfg.system;
        sys.n_t = n_t;
        sys.n_r = n_r;
        sys.n_s = effective_ns(sys);
        sys.validate();
        const std::string tag = std::to_string(n_t) + "x" + std::to_string(n_r);

        struct Trial {
            std::vector<double> lambda_max;
            std::vector<double> rate;
        };
        const auto per_trial = parallel_map(trials, options.threads, [&](std::size_t t) {
            const ChannelRealization ch = draw_channel(sys, t);
            Trial out;
            for (double snr : snrs) {
                const SrProblem problem(with_snr(sys, snr), ch);
                const SrSolution sol = problem.solve(GammaSetting::max(), 1, options.sdr);
                out.lambda_max.push_back(problem.bounds().lambda_max);
                out.rate.push_back(sol.achieved_rate);
            }
            return out;
        });

        Curve adpar("fig2_adpar_" + tag, snrs.size(), trials);
        Curve rate("fig2_rate_" + tag, snrs.size(), trials);
        for (std::size_t t = 0; t < trials; ++t) {
            for (std::size_t i = 0; i < snrs.size(); ++i) {
                adpar.samples[i][t] = per_trial[t].lambda_max[i];
                rate.samples[i][t] = per_trial[t].rate[i];
            }
        }
        run.sweeps.push_back(adpar.finish(snrs));
        run.sweeps.push_back(rate.finish(snrs));
    }
    return run;
}

FigureRun run_fig3(const RunConfig& cfg, const HarnessOptions& options)
{
    cfg.system.validate();
    cfg.sweep.validate();
    const SystemConfig& sys = cfg.system;
    const auto& snrs = cfg.sweep.snr_grid_db;
    const auto trials = static_cast<std::size_t>(sys.trials);
    const ArrayGeometry rx = rx_geometry(sys);

    const std::array<GammaSetting, 3> gammas{GammaSetting::of(0.0), GammaSetting::of(5.0),
                                             GammaSetting::max()};
    const std::array<std::string, 3> names{"gamma0", "gamma5", "gammamax"};

    // The pattern SNR joins the grid only if it is not already on it.
    std::vector<double> eval_snrs = snrs;
    std::size_t pattern_slot = eval_snrs.size();
    for (std::size_t i = 0; i < snrs.size(); ++i)
        if (snrs[i] == sys.snr_db)
            pattern_slot = i;
    if (pattern_slot == eval_snrs.size())
        eval_snrs.push_back(sys.snr_db);

    struct Trial {
        std::vector<std::array<double, 4>> rate;
        std::vector<std::array<bool, 3>> infeasible;
        std::array<std::vector<BeampatternSample>, 3> pattern;
    };
    const auto per_trial = parallel_map(trials, options.threads, [&](std::size_t t) {
        const ChannelRealization ch = draw_channel(sys, t);
        Trial out;
        for (std::size_t i = 0; i < eval_snrs.size(); ++i) {
            const SystemConfig at = with_snr(sys, eval_snrs[i]);
            const SrProblem problem(at, ch);
            std::array<double, 4> rates{};
            std::array<bool, 3> infeasible{};
            for (std::size_t g = 0; g < gammas.size(); ++g) {
                const SrSolution sol = problem.solve(gammas[g], sys.n_s, options.sdr);
                rates[g] = sol.achieved_rate;
                infeasible[g] = sol.case_taken == SolutionCase::Infeasible;
                if (i == pattern_slot && !infeasible[g])
                    out.pattern[g] = beampattern(spatial_covariance(ch.h_full, sol.w_full, problem.n0()),
                                                 rx, sys.grid_points);
            }
            const Precoder bench = conventional_benchmark(ch.h_full, sys.power_watts, problem.n0(), sys.n_s);
            rates[3] = achievable_rate(ch.h_full, bench, problem.n0());
            out.rate.push_back(rates);
            out.infeasible.push_back(infeasible);
        }
        return out;
    });

    std::vector<Curve> curves;
    for (const auto& n : names)
        curves.emplace_back("fig3_rate_" + n, snrs.size(), trials);
    curves.emplace_back("fig3_rate_benchmark", snrs.size(), trials);
    std::array<PatternSum, 3> patterns;
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < snrs.size(); ++i) {
            for (std::size_t c = 0; c < 4; ++c)
                curves[c].samples[i][t] = per_trial[t].rate[i][c];
            for (std::size_t g = 0; g < 3; ++g)
                curves[g].infeasible[i] += per_trial[t].infeasible[i][g] ? 1 : 0;
        }
        for (std::size_t g = 0; g < 3; ++g) {
            if (per_trial[t].pattern[g].empty())
                ++patterns[g].skipped;
            else
                patterns[g].add(per_trial[t].pattern[g]);
        }
    }

    FigureRun run;
    run.run_id = "fig3";
    run.metadata = base_metadata(run.run_id, cfg);
    for (const auto& c : curves)
        run.sweeps.push_back(c.finish(snrs));
    nlohmann::ordered_json skipped;
    for (std::size_t g = 0; g < 3; ++g) {
        run.patterns.push_back(patterns[g].finish("fig3_pattern_" + names[g], sys.snr_db));
        skipped["fig3_pattern_" + names[g]] = patterns[g].skipped;
    }
    run.metadata["pattern_infeasible_trials"] = skipped;
    return run;
}

FigureRun run_fig4(const RunConfig& cfg, const HarnessOptions& options)
{
    cfg.system.validate();
    cfg.sweep.validate();
    const SystemConfig& sys = cfg.system;
    const auto& gammas = cfg.sweep.gamma_grid;
    const auto& ns_set = cfg.sweep.ns_set;
    const auto trials = static_cast<std::size_t>(sys.trials);
    const ArrayGeometry rx = rx_geometry(sys);
    const int ns_cap = std::min(sys.n_t - 1, sys.n_r);
    for (int n : ns_set)
        if (n < 1 || n > ns_cap)
            throw ConfigError("sweep.ns_set", "entry " + std::to_string(n) +
                                                  " exceeds min(n_t - 1, n_r) = " + std::to_string(ns_cap));

    constexpr double kPatternGamma = 5.0;
    const std::vector<int> pattern_ns{1, 4, 8};

    struct Trial {
        std::vector<std::vector<double>> rate;           // [ns][gamma]
        std::vector<std::vector<bool>> infeasible;       // [ns][gamma]
        std::vector<std::vector<BeampatternSample>> pattern;  // per pattern_ns entry
    };
    const auto per_trial = parallel_map(trials, options.threads, [&](std::size_t t) {
        const ChannelRealization ch = draw_channel(sys, t);
        const SrProblem problem(sys, ch);
        Trial out;
        out.pattern.resize(pattern_ns.size());
        for (int n_s : ns_set) {
            std::vector<double> rates;
            std::vector<bool> infeasible;
            for (double g : gammas) {
                const SrSolution sol = problem.solve(GammaSetting::of(g), n_s, options.sdr);
                rates.push_back(sol.achieved_rate);
                infeasible.push_back(sol.case_taken == SolutionCase::Infeasible);
            }
            out.rate.push_back(std::move(rates));
            out.infeasible.push_back(std::move(infeasible));
        }
        for (std::size_t k = 0; k < pattern_ns.size(); ++k) {
            if (pattern_ns[k] > ns_cap)
                continue;
            const SrSolution sol = problem.solve(GammaSetting::of(kPatternGamma), pattern_ns[k], options.sdr);
            if (sol.case_taken != SolutionCase::Infeasible)
                out.pattern[k] = beampattern(spatial_covariance(ch.h_full, sol.w_full, problem.n0()), rx,
                                             sys.grid_points);
        }
        return out;
    });

    FigureRun run;
    run.run_id = "fig4";
    run.metadata = base_metadata(run.run_id, cfg);
    for (std::size_t s = 0; s < ns_set.size(); ++s) {
        Curve c("fig4_rate_ns" + std::to_string(ns_set[s]), gammas.size(), trials);
        for (std::size_t t = 0; t < trials; ++t)
            for (std::size_t g = 0; g < gammas.size(); ++g) {
                c.samples[g][t] = per_trial[t].rate[s][g];
                c.infeasible[g] += per_trial[t].infeasible[s][g] ? 1 : 0;
            }
        run.sweeps.push_back(c.finish(gammas));
    }
    nlohmann::ordered_json skipped;
    for (std::size_t k = 0; k < pattern_ns.size(); ++k) {
        if (pattern_ns[k] > ns_cap)
            continue;
        PatternSum sum;
        for (std::size_t t = 0; t < trials; ++t) {
            if (per_trial[t].pattern[k].empty())
                ++sum.skipped;
            else
                sum.add(per_trial[t].pattern[k]);
        }
        const std::string id = "fig4_pattern_ns" + std::to_string(pattern_ns[k]);
        run.patterns.push_back(sum.finish(id, sys.snr_db));
        skipped[id] = sum.skipped;
    }
    run.metadata["pattern_gamma"] = kPatternGamma;
    run.metadata["pattern_infeasible_trials"] = skipped;
    return run;
}

std::string sweep_csv(const SweepResult& sweep)
{
    std::ostringstream os;
    os << "x,mean,std_error,n_trials\n";
    for (const auto& p : sweep.points)
        os << fmt(p.x) << ',' << fmt(p.mean) << ',' << fmt(p.std_error) << ',' << p.trial_count << '\n';
    return os.str();
}

std::string pattern_csv(const PatternResult& pattern)
{
    std::ostringstream os;
    os << "theta_deg,power,power_db\n";
    for (const auto& s : pattern.samples)
        os << fmt(s.theta * 180.0 / kPi) << ',' << fmt(s.power) << ',' << fmt(s.power_db) << '\n';
    return os.str();
}

std::vector<std::filesystem::path> write_figure(const FigureRun& run, const std::filesystem::path& dir,
                                                std::uint64_t seed)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& name, const std::string& body) {
        const auto path = dir / name;
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        f << body;
        if (!f)
            throw std::runtime_error("write failed: " + path.string());
        written.push_back(path);
        return path.filename().string();
    };

    const std::string suffix = "_" + std::to_string(seed);
    nlohmann::ordered_json meta = run.metadata;
    meta["sweeps"] = nlohmann::ordered_json::array();
    for (const auto& s : run.sweeps) {
        nlohmann::ordered_json entry;
        entry["id"] = s.sweep_id;
        entry["file"] = emit(s.sweep_id + suffix + ".csv", sweep_csv(s));
        nlohmann::ordered_json inf = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            const std::size_t n = i < s.infeasible.size() ? s.infeasible[i] : 0;
            if (n > 0)
                inf.push_back({{"x", s.points[i].x}, {"infeasible_trials", n}});
        }
        entry["infeasible"] = inf;
        meta["sweeps"].push_back(entry);
    }
    meta["patterns"] = nlohmann::ordered_json::array();
    for (const auto& p : run.patterns) {
        nlohmann::ordered_json entry;
        entry["id"] = p.pattern_id;
        entry["file"] = emit(p.pattern_id + suffix + ".csv", pattern_csv(p));
        entry["snr_db"] = p.snr_db;
        meta["patterns"].push_back(entry);
    }
    emit(run.run_id + suffix + ".json", meta.dump(2) + "\n");
    return written;
}

}  // namespace srbf
