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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srbf/numerics.hpp"

namespace srbf {

/// Validation failure; the message starts with the offending field name.
class ConfigError : public InvalidArgument {
public:
    ConfigError(const std::string& field, const std::string& reason);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// ADPAR threshold: an absolute value, or the realization-dependent
/// upper/lower generalized-eigenvalue bound.
struct GammaSetting {
    enum class Kind { Value, Max, Min };
    Kind kind = Kind::Value;
    double value = 5.0;

    static GammaSetting of(double v) { return {Kind::Value, v}; }
    static GammaSetting max() { return {Kind::Max, 0.0}; }
    static GammaSetting min() { return {Kind::Min, 0.0}; }

    /// "max", "min" or a decimal number.
    static GammaSetting parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const GammaSetting& other) const;
};

/// Scenario parameters. Angles are in degrees here and converted to radians
/// by the accessors; everything downstream works in radians.
struct SystemConfig {
    int n_t = 16;
    int n_r = 8;
    int n_s = 4;
    double phi_deg = 60.0;
    double phi_hat_deg = 90.0;
    double kappa_db = 0.0;
    double power_watts = 1.0;
    double snr_db = 10.0;
    GammaSetting gamma = GammaSetting::of(5.0);
    double spacing_wavelengths = 0.5;
    int trials = 500;
    std::uint64_t base_seed = 1;
    int grid_points = 1801;

    double phi_rad() const;
    double phi_hat_rad() const;
    double kappa_linear() const;
    double snr_linear() const;
    /// N0 = P |alpha|^2 / SNR with |alpha| = 1.
    double noise_power() const;

    /// Throws ConfigError naming the first violated field.
    void validate() const;

    bool operator==(const SystemConfig& other) const = default;
};

/// Inputs that only the experiment sweeps consume.
struct SweepSettings {
    std::vector<double> snr_grid_db;
    std::vector<double> gamma_grid;
    std::vector<int> ns_set{1, 2, 4, 6, 8};
    std::vector<std::pair<int, int>> antenna_configs{{32, 16}, {16, 16}, {16, 8}};

    SweepSettings();
    void validate() const;
    bool operator==(const SweepSettings& other) const = default;
};

struct RunConfig {
    SystemConfig system;
    SweepSettings sweep;
    bool operator==(const RunConfig& other) const = default;
};

nlohmann::ordered_json to_json(const SystemConfig& cfg);
nlohmann::ordered_json to_json(const SweepSettings& sweep);
nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Applies the keys of a JSON object on top of `base`. Unknown keys and
/// type mismatches raise ConfigError. The result is validated.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Parses a JSON config file without applying it; an empty file is {}.
nlohmann::json read_config_json(const std::filesystem::path& path);

/// Reads a JSON config file. An empty (or whitespace-only) file yields the
/// defaults.
RunConfig load_run_config(const std::filesystem::path& path);

/// "a:step:b" inclusive range or comma-separated list.
std::vector<double> parse_real_grid(const std::string& text, const std::string& field);
std::vector<int> parse_int_list(const std::string& text, const std::string& field);
/// "32x16,16x16" -> {(32, 16), (16, 16)} as (n_t, n_r).
std::vector<std::pair<int, int>> parse_antenna_configs(const std::string& text);

}  // namespace srbf
