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

#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srbf/beamformer.hpp"
#include "srbf/config.hpp"
#include "srbf/metrics.hpp"

namespace srbf {

struct SweepPoint {
    double x = 0.0;
    double mean = 0.0;
    double std_error = 0.0;  // sample std / sqrt(trial_count)
    std::size_t trial_count = 0;
};

struct SweepResult {
    std::string sweep_id;
    std::vector<SweepPoint> points;
    /// Per-point count of trials whose constraint set was empty; those
    /// trials contribute a rate of 0.
    std::vector<std::size_t> infeasible;
};

struct PatternResult {
    std::string pattern_id;
    double snr_db = 0.0;
    /// Trial-averaged a(theta)^H R a(theta), dB column normalized to the peak.
    std::vector<BeampatternSample> samples;
};

/// Output of one figure reproduction.
struct FigureRun {
    std::string run_id;
    std::vector<SweepResult> sweeps;
    std::vector<PatternResult> patterns;
    nlohmann::ordered_json metadata;
};

struct HarnessOptions {
    unsigned threads = 1;
    SdrOptions sdr;
};

/// Mean and standard error of one x-position.
SweepPoint summarize(double x, const std::vector<double>& samples);

/// Fig. 2: per antenna configuration (n_t, n_r), lambda_max of {A', J'} and
/// the rate of the ADPAR-maximizing closed-form precoder versus SNR.
FigureRun run_fig2(const RunConfig& cfg, const HarnessOptions& options = {});

/// Fig. 3: rate versus SNR for gamma in {0, 5, max} plus the water-filling
/// benchmark on the full channel, and averaged beampatterns for the three
/// gammas at cfg.system.snr_db.
FigureRun run_fig3(const RunConfig& cfg, const HarnessOptions& options = {});

/// Fig. 4: rate versus gamma for each stream count in the sweep's ns_set at
/// cfg.system.snr_db, and beampatterns at gamma = 5 for N_S in {1, 4, 8}.
FigureRun run_fig4(const RunConfig& cfg, const HarnessOptions& options = {});

/// Beamscan direction estimate: argmax of a(theta)^H R a(theta) over a
/// uniform grid on [0, pi], refined by golden-section search inside the
/// neighbouring cells to 1e-4 rad. A flat pattern returns the lowest-theta
/// grid maximizer.
double beamscan_estimate(const SpatialCovariance& r, const ArrayGeometry& rx,
                         int grid_points = 1801);

/// Writes `<id>_<seed>.csv` per sweep and pattern plus
/// `<run_id>_<seed>.json`, all inside `dir`. Returns the written paths.
std::vector<std::filesystem::path> write_figure(const FigureRun& run,
                                                const std::filesystem::path& dir,
                                                std::uint64_t seed);

std::string sweep_csv(const SweepResult& sweep);
std::string pattern_csv(const PatternResult& pattern);

/// Tag compiled in from `git describe` at configure time.
std::string build_tag();

/**
 * Evaluates fn(i) for i in [0, count) on `threads` workers and returns the
 * results in index order, so reductions over the output do not depend on
 * scheduling. The first exception thrown by any task is rethrown.
 */
template <typename Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))>
{
    using T = decltype(fn(std::size_t{}));
    std::vector<T> out(count);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

}  // namespace srbf
