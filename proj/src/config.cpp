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

#include "srbf/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace srbf {
namespace {

double parse_double(const std::string& text, const std::string& field)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(field, "'" + text + "' is not a number");
    }
    if (used != text.size())
        throw ConfigError(field, "'" + text + "' is not a number");
    return v;
}

int parse_int(const std::string& text, const std::string& field)
{
    int v = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ConfigError(field, "'" + text + "' is not an integer");
    return v;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(trim(item));
    return parts;
}

void require(bool ok, const std::string& field, const std::string& reason)
{
    if (!ok)
        throw ConfigError(field, reason);
}

int get_int(const nlohmann::json& v, const std::string& field)
{
    require(v.is_number_integer(), field, "expected an integer");
    return v.get<int>();
}

double get_real(const nlohmann::json& v, const std::string& field)
{
    require(v.is_number(), field, "expected a number");
    return v.get<double>();
}

}  // namespace

ConfigError::ConfigError(const std::string& field, const std::string& reason)
    : InvalidArgument(field + ": " + reason), field_(field)
{
}

GammaSetting GammaSetting::parse(const std::string& text)
{
    const std::string t = trim(text);
    if (t == "max")
        return max();
    if (t == "min")
        return min();
    return of(parse_double(t, "gamma"));
}

std::string GammaSetting::to_string() const
{
    switch (kind) {
    case Kind::Max: return "max";
    case Kind::Min: return "min";
    case Kind::Value: break;
    }
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

bool GammaSetting::operator==(const GammaSetting& other) const
{
    if (kind != other.kind)
        return false;
    return kind != Kind::Value || value == other.value;
}

double SystemConfig::phi_rad() const { return phi_deg * kPi / 180.0; }
double SystemConfig::phi_hat_rad() const { return phi_hat_deg * kPi / 180.0; }
double SystemConfig::kappa_linear() const { return std::pow(10.0, kappa_db / 10.0); }
double SystemConfig::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }
double SystemConfig::noise_power() const { return power_watts / snr_linear(); }

void SystemConfig::validate() const
{
    require(n_t >= 2, "n_t", "must be at least 2");
    require(n_r >= 1, "n_r", "must be at least 1");
    require(n_s >= 1 && n_s <= std::min(n_t - 1, n_r), "n_s",
            "must satisfy 1 <= n_s <= min(n_t - 1, n_r)");
    require(std::isfinite(phi_deg) && phi_deg >= 0.0 && phi_deg <= 180.0, "phi_deg",
            "must lie in [0, 180]");
    require(std::isfinite(phi_hat_deg) && phi_hat_deg >= 0.0 && phi_hat_deg <= 180.0,
            "phi_hat_deg", "must lie in [0, 180]");
    require(phi_deg != phi_hat_deg, "phi_hat_deg", "must differ from phi_deg");
    require(std::isfinite(kappa_db), "kappa_db", "must be finite");
    require(std::isfinite(power_watts) && power_watts > 0.0, "power_watts", "must be positive");
    require(std::isfinite(snr_db), "snr_db", "must be finite");
    require(gamma.kind != GammaSetting::Kind::Value || std::isfinite(gamma.value), "gamma",
            "must be finite or one of max/min");
    require(std::isfinite(spacing_wavelengths) && spacing_wavelengths > 0.0,
            "spacing_wavelengths", "must be positive");
    require(trials >= 1, "trials", "must be at least 1");
    require(grid_points >= 2, "grid_points", "must be at least 2");
}

SweepSettings::SweepSettings()
{
    for (int s = -10; s <= 20; s += 2)
        snr_grid_db.push_back(s);
    for (int g = 0; g <= 8; ++g)
        gamma_grid.push_back(g);
}

void SweepSettings::validate() const
{
    require(!snr_grid_db.empty(), "sweep.snr_grid_db", "must not be empty");
    for (double v : snr_grid_db)
        require(std::isfinite(v), "sweep.snr_grid_db", "entries must be finite");
    require(!gamma_grid.empty(), "sweep.gamma_grid", "must not be empty");
    for (double v : gamma_grid)
        require(std::isfinite(v), "sweep.gamma_grid", "entries must be finite");
    require(!ns_set.empty(), "sweep.ns_set", "must not be empty");
    for (int v : ns_set)
        require(v >= 1, "sweep.ns_set", "entries must be at least 1");
    require(!antenna_configs.empty(), "sweep.antenna_configs", "must not be empty");
    for (const auto& [nt, nr] : antenna_configs)
        require(nt >= 2 && nr >= 1, "sweep.antenna_configs", "need n_t >= 2 and n_r >= 1");
}

nlohmann::ordered_json to_json(const SystemConfig& cfg)
{
    nlohmann::ordered_json j;
    j["n_t"] = cfg.n_t;
    j["n_r"] = cfg.n_r;
    j["n_s"] = cfg.n_s;
    j["phi_deg"] = cfg.phi_deg;
    j["phi_hat_deg"] = cfg.phi_hat_deg;
    j["kappa_db"] = cfg.kappa_db;
    j["power_watts"] = cfg.power_watts;
    j["snr_db"] = cfg.snr_db;
    if (cfg.gamma.kind == GammaSetting::Kind::Value)
        j["gamma"] = cfg.gamma.value;
    else
        j["gamma"] = cfg.gamma.to_string();
    j["spacing_wavelengths"] = cfg.spacing_wavelengths;
    j["trials"] = cfg.trials;
    j["base_seed"] = cfg.base_seed;
    j["grid_points"] = cfg.grid_points;
    return j;
}

nlohmann::ordered_json to_json(const SweepSettings& sweep)
{
    nlohmann::ordered_json j;
    j["snr_grid_db"] = sweep.snr_grid_db;
    j["gamma_grid"] = sweep.gamma_grid;
    j["ns_set"] = sweep.ns_set;
    auto configs = nlohmann::ordered_json::array();
    for (const auto& [nt, nr] : sweep.antenna_configs)
        configs.push_back({nt, nr});
    j["antenna_configs"] = configs;
    return j;
}

nlohmann::ordered_json to_json(const RunConfig& cfg)
{
    auto j = to_json(cfg.system);
    j["sweep"] = to_json(cfg.sweep);
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base)
{
    require(j.is_object(), "config", "top level must be an object");
    SystemConfig& c = base.system;
    for (const auto& [key, v] : j.items()) {
        if (key == "n_t") c.n_t = get_int(v, key);
        else if (key == "n_r") c.n_r = get_int(v, key);
        else if (key == "n_s") c.n_s = get_int(v, key);
        else if (key == "phi_deg") c.phi_deg = get_real(v, key);
        else if (key == "phi_hat_deg") c.phi_hat_deg = get_real(v, key);
        else if (key == "kappa_db") c.kappa_db = get_real(v, key);
        else if (key == "power_watts") c.power_watts = get_real(v, key);
        else if (key == "snr_db") c.snr_db = get_real(v, key);
        else if (key == "gamma") {
            if (v.is_string())
                c.gamma = GammaSetting::parse(v.get<std::string>());
            else
                c.gamma = GammaSetting::of(get_real(v, key));
        }
        else if (key == "spacing_wavelengths") c.spacing_wavelengths = get_real(v, key);
        else if (key == "trials") c.trials = get_int(v, key);
        else if (key == "base_seed") {
            require(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
                    key, "expected a non-negative integer");
            c.base_seed = v.get<std::uint64_t>();
        }
        else if (key == "grid_points") c.grid_points = get_int(v, key);
        else if (key == "sweep") {
            require(v.is_object(), key, "expected an object");
            SweepSettings& s = base.sweep;
            for (const auto& [skey, sv] : v.items()) {
                const std::string field = "sweep." + skey;
                if (skey == "snr_grid_db" || skey == "gamma_grid") {
                    require(sv.is_array(), field, "expected an array");
                    std::vector<double> vals;
                    for (const auto& e : sv)
                        vals.push_back(get_real(e, field));
                    (skey == "snr_grid_db" ? s.snr_grid_db : s.gamma_grid) = std::move(vals);
                }
                else if (skey == "ns_set") {
                    require(sv.is_array(), field, "expected an array");
                    s.ns_set.clear();
                    for (const auto& e : sv)
                        s.ns_set.push_back(get_int(e, field));
                }
                else if (skey == "antenna_configs") {
                    require(sv.is_array(), field, "expected an array of [n_t, n_r] pairs");
                    s.antenna_configs.clear();
                    for (const auto& e : sv) {
                        require(e.is_array() && e.size() == 2, field, "expected [n_t, n_r] pairs");
                        s.antenna_configs.emplace_back(get_int(e[0], field), get_int(e[1], field));
                    }
                }
                else {
                    throw ConfigError(field, "unknown key");
                }
            }
        }
        else {
            throw ConfigError(key, "unknown key");
        }
    }
    base.system.validate();
    base.sweep.validate();
    return base;
}

nlohmann::json read_config_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (trim(text).empty())
        return nlohmann::json::object();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    return run_config_from_json(read_config_json(path));
}

std::vector<double> parse_real_grid(const std::string& text, const std::string& field)
{
    const std::string t = trim(text);
    require(!t.empty(), field, "must not be empty");
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        require(parts.size() == 3, field, "range must be start:step:stop");
        const double start = parse_double(parts[0], field);
        const double step = parse_double(parts[1], field);
        const double stop = parse_double(parts[2], field);
        require(step > 0.0 && stop >= start, field, "range needs step > 0 and stop >= start");
        std::vector<double> out;
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split(t, ','))
        out.push_back(parse_double(p, field));
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& field)
{
    std::vector<int> out;
    for (const auto& p : split(trim(text), ','))
        out.push_back(parse_int(p, field));
    require(!out.empty(), field, "must not be empty");
    return out;
}

std::vector<std::pair<int, int>> parse_antenna_configs(const std::string& text)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& p : split(trim(text), ',')) {
        const auto x = p.find('x');
        require(x != std::string::npos, "antenna_configs", "expected entries like 16x8");
        out.emplace_back(parse_int(p.substr(0, x), "antenna_configs"),
                         parse_int(p.substr(x + 1), "antenna_configs"));
    }
    require(!out.empty(), "antenna_configs", "must not be empty");
    return out;
}

}  // namespace srbf
