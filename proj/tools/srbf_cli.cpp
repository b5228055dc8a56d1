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

// srbf command-line front end.
//
// Exit codes: 0 ok, 1 invalid input, 2 numerical failure, 3 infeasible.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "srbf/beamformer.hpp"
#include "srbf/channel.hpp"
#include "srbf/config.hpp"
#include "srbf/harness.hpp"
#include "srbf/oracles.hpp"

namespace fs = std::filesystem;
using namespace srbf;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kNumerical = 2, kInfeasible = 3 };

struct Flags {
    std::optional<std::string> config;
    std::optional<int> n_t, n_r, n_s, trials, grid_points;
    std::optional<double> phi_deg, phi_hat_deg, kappa_db, power_watts, snr_db, spacing;
    std::optional<std::string> gamma;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> snr_grid, gamma_grid, ns_set, antenna_configs;
    std::optional<std::string> out;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t trial = 0;
    bool pattern = false;
};

void add_common(CLI::App* app, Flags& f)
{
    app->add_option("--config", f.config, "JSON config file; flags override its values");
    app->add_option("--n-t", f.n_t, "transmit antennas");
    app->add_option("--n-r", f.n_r, "receive antennas");
    app->add_option("--n-s", f.n_s, "data streams");
    app->add_option("--phi-deg", f.phi_deg, "true direction (deg)");
    app->add_option("--phi-hat-deg", f.phi_hat_deg, "virtual direction (deg)");
    app->add_option("--kappa-db", f.kappa_db, "Rician factor (dB)");
    app->add_option("--power-watts", f.power_watts, "transmit power (W)");
    app->add_option("--snr-db", f.snr_db, "operating SNR (dB)");
    app->add_option("--gamma", f.gamma, "ADPAR threshold: number, max or min");
    app->add_option("--spacing-wavelengths", f.spacing, "element spacing (wavelengths)");
    app->add_option("--trials", f.trials, "Monte-Carlo trials");
    app->add_option("--base-seed,--seed", f.seed, "base RNG seed");
    app->add_option("--grid-points", f.grid_points, "beampattern grid size over [0, 180] deg");
    app->add_option("--snr-grid", f.snr_grid, "sweep SNR grid, start:step:stop or a,b,c (dB)");
    app->add_option("--gamma-grid", f.gamma_grid, "sweep gamma grid");
    app->add_option("--ns-set", f.ns_set, "sweep stream counts, e.g. 1,2,4");
    app->add_option("--antenna-configs", f.antenna_configs, "sweep arrays, e.g. 32x16,16x8");
    app->add_option("--out", f.out, "output directory (default $SRBF_OUT_DIR or ./srbf_out)");
    app->add_option("--threads", f.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
}

RunConfig resolve(const Flags& f)
{
    nlohmann::json j = f.config ? read_config_json(*f.config) : nlohmann::json::object();
    if (!j.is_object())
        throw ConfigError("config", "top level must be an object");
    nlohmann::json patch = nlohmann::json::object();
    auto set = [&](const char* key, const auto& opt) {
        if (opt)
            patch[key] = *opt;
    };
    set("n_t", f.n_t);
    set("n_r", f.n_r);
    set("n_s", f.n_s);
    set("phi_deg", f.phi_deg);
    set("phi_hat_deg", f.phi_hat_deg);
    set("kappa_db", f.kappa_db);
    set("power_watts", f.power_watts);
    set("snr_db", f.snr_db);
    set("spacing_wavelengths", f.spacing);
    set("trials", f.trials);
    set("base_seed", f.seed);
    set("grid_points", f.grid_points);
    if (f.gamma) {
        const GammaSetting g = GammaSetting::parse(*f.gamma);
        if (g.kind == GammaSetting::Kind::Value)
            patch["gamma"] = g.value;
        else
            patch["gamma"] = g.to_string();
    }
    nlohmann::json sweep = nlohmann::json::object();
    if (f.snr_grid)
        sweep["snr_grid_db"] = parse_real_grid(*f.snr_grid, "sweep.snr_grid_db");
    if (f.gamma_grid)
        sweep["gamma_grid"] = parse_real_grid(*f.gamma_grid, "sweep.gamma_grid");
    if (f.ns_set)
        sweep["ns_set"] = parse_int_list(*f.ns_set, "sweep.ns_set");
    if (f.antenna_configs) {
        auto arr = nlohmann::json::array();
        for (const auto& [nt, nr] : parse_antenna_configs(*f.antenna_configs))
            arr.push_back({nt, nr});
        sweep["antenna_configs"] = arr;
    }
    if (!sweep.empty())
        patch["sweep"] = sweep;
    j.merge_patch(patch);
    return run_config_from_json(j);
}

fs::path out_dir(const Flags& f)
{
    if (f.out)
        return *f.out;
    if (const char* env = std::getenv("SRBF_OUT_DIR"); env && *env)
        return env;
    return "srbf_out";
}

int cmd_solve(const Flags& f)
{
    const RunConfig cfg = resolve(f);
    const SystemConfig& sys = cfg.system;
    const ChannelRealization ch = draw_channel(sys, f.trial);
    const SrProblem problem(sys, ch);
    const SrSolution sol = problem.solve(sys.gamma, sys.n_s);

    if (sol.case_taken == SolutionCase::Infeasible) {
        std::fprintf(stderr,
                     "infeasible: gamma = %.6g exceeds λ_max = %.6g for trial %llu "
                     "(lambda_max is the largest achievable ADPAR at phi_hat)\n",
                     sol.gamma, sol.lambda_max, static_cast<unsigned long long>(f.trial));
        return kInfeasible;
    }

    const ComplexVec a_t = steering_vector(tx_geometry(sys), sys.phi_rad());
    const double leak = (a_t.adjoint() * sol.w_full.w()).norm();
    std::printf("trial          %llu\n", static_cast<unsigned long long>(f.trial));
    std::printf("case           %s\n", std::string(to_string(sol.case_taken)).c_str());
    std::printf("gamma          %.10g\n", sol.gamma);
    std::printf("lambda_min     %.10g\n", sol.lambda_min);
    std::printf("lambda_max     %.10g\n", sol.lambda_max);
    std::printf("rate_bps_hz    %.10g\n", sol.achieved_rate);
    std::printf("adpar_phi_hat  %.10g\n", sol.achieved_adpar);
    std::printf("power          %.10g\n", sol.w_full.w().squaredNorm());
    std::printf("los_leakage    %.3e\n", leak);
    if (!sol.sdr_indices.empty()) {
        std::printf("sdr_indices   ");
        for (int i : sol.sdr_indices)
            std::printf(" %d", i);
        std::printf("\nsdr_powers    ");
        for (Eigen::Index i = 0; i < sol.sdr_powers.size(); ++i)
            std::printf(" %.6g", sol.sdr_powers(i));
        std::printf("\n");
    }

    if (f.pattern) {
        PatternResult pat;
        pat.pattern_id = "solve_pattern_t" + std::to_string(f.trial);
        pat.snr_db = sys.snr_db;
        pat.samples = beampattern(spatial_covariance(ch.h_full, sol.w_full, problem.n0()),
                                  rx_geometry(sys), sys.grid_points);
        const fs::path dir = out_dir(f);
        fs::create_directories(dir);
        const fs::path path = dir / (pat.pattern_id + "_" + std::to_string(sys.base_seed) + ".csv");
        std::ofstream(path, std::ios::binary) << pattern_csv(pat);
        std::printf("pattern        %s\n", path.string().c_str());
    }
    return kOk;
}

int cmd_bounds(const Flags& f)
{
    const RunConfig cfg = resolve(f);
    const SystemConfig& sys = cfg.system;
    std::printf("trial,lambda_min,lambda_max\n");
    for (int t = 0; t < sys.trials; ++t) {
        const SrProblem problem(sys, draw_channel(sys, static_cast<std::uint64_t>(t)));
        std::printf("%d,%.17g,%.17g\n", t, problem.bounds().lambda_min, problem.bounds().lambda_max);
    }
    return kOk;
}

int cmd_sweep(const Flags& f, FigureRun (*runner)(const RunConfig&, const HarnessOptions&))
{
    const RunConfig cfg = resolve(f);
    HarnessOptions opts;
    opts.threads = f.threads;
    const FigureRun run = runner(cfg, opts);
    for (const auto& path : write_figure(run, out_dir(f), cfg.system.base_seed))
        std::printf("%s\n", path.string().c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sensing-resistance beamforming: solver, bounds and figure sweeps"};
    app.require_subcommand(1);
    Flags flags;

    auto* solve = app.add_subcommand("solve", "solve one channel realization");
    add_common(solve, flags);
    solve->add_option("--trial", flags.trial, "trial index of the realization");
    solve->add_flag("--pattern", flags.pattern, "also write the beampattern CSV to --out");

    auto* fig2 = app.add_subcommand("sweep-fig2", "max ADPAR and its rate versus SNR");
    auto* fig3 = app.add_subcommand("sweep-fig3", "rate versus SNR for several gamma, plus patterns");
    auto* fig4 = app.add_subcommand("sweep-fig4", "rate versus gamma for several N_S, plus patterns");
    auto* bounds = app.add_subcommand("bounds", "print lambda_min / lambda_max per realization");
    auto* self = app.add_subcommand("selftest", "run the oracle property checks");
    for (auto* sub : {fig2, fig3, fig4, bounds})
        add_common(sub, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (solve->parsed())
            return cmd_solve(flags);
        if (bounds->parsed())
            return cmd_bounds(flags);
        if (fig2->parsed())
            return cmd_sweep(flags, run_fig2);
        if (fig3->parsed())
            return cmd_sweep(flags, run_fig3);
        if (fig4->parsed())
            return cmd_sweep(flags, run_fig4);
        if (self->parsed())
            return oracle::selftest(std::cout) == 0 ? kOk : kNumerical;
    } catch (const InvalidArgument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kInfeasible;
    } catch (const NumericalFailure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kNumerical;
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumerical;
    }
    return kInvalid;
}
