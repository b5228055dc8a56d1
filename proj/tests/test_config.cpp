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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "srbf/config.hpp"

using namespace srbf;
namespace fs = std::filesystem;

namespace {

std::string field_of(const nlohmann::json& j)
{
    try {
        run_config_from_json(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

fs::path scratch_file(const std::string& name, const std::string& body)
{
    const fs::path dir = fs::temp_directory_path() / "srbf_test_config";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << body;
    return p;
}

}  // namespace

TEST_CASE("defaults are valid and match the reference operating point")
{
    const SystemConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.n_t == 16);
    CHECK(c.n_r == 8);
    CHECK(c.n_s == 4);
    CHECK(c.phi_deg == 60.0);
    CHECK(c.phi_hat_deg == 90.0);
    CHECK(c.kappa_linear() == doctest::Approx(1.0));
    CHECK(c.noise_power() == doctest::Approx(0.1));
    CHECK(c.gamma == GammaSetting::of(5.0));
    CHECK_NOTHROW(SweepSettings().validate());
}

TEST_CASE("validation names the offending field")
{
    CHECK(field_of({{"n_s", 16}}) == "n_s");
    CHECK(field_of({{"n_s", 0}}) == "n_s");
    CHECK(field_of({{"n_t", 1}, {"n_s", 1}}) == "n_t");
    CHECK(field_of({{"phi_hat_deg", 60.0}}) == "phi_hat_deg");
    CHECK(field_of({{"phi_deg", 190.0}}) == "phi_deg");
    CHECK(field_of({{"power_watts", 0.0}}) == "power_watts");
    CHECK(field_of({{"trials", 0}}) == "trials");
    CHECK(field_of({{"grid_points", 1}}) == "grid_points");
    CHECK(field_of({{"spacing_wavelengths", -0.5}}) == "spacing_wavelengths");
    CHECK(field_of({{"n_t", "sixteen"}}) == "n_t");
    CHECK(field_of({{"bogus", 1}}) == "bogus");
    CHECK(field_of({{"sweep", {{"bogus", 1}}}}) == "sweep.bogus");
    CHECK(field_of({{"sweep", {{"ns_set", {0}}}}}) == "sweep.ns_set");
    CHECK(field_of({{"sweep", {{"snr_grid_db", nlohmann::json::array()}}}}) == "sweep.snr_grid_db");
    CHECK(field_of({{"sweep", {{"antenna_configs", {{16}}}}}}) == "sweep.antenna_configs");
    CHECK(field_of(nlohmann::json::array()) == "config");

    SystemConfig c;
    c.n_s = c.n_t;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("n_s"), ConfigError);
}

TEST_CASE("JSON round trip")
{
    RunConfig c;
    c.system.n_t = 12;
    c.system.n_s = 3;
    c.system.kappa_db = 20.0;
    c.system.gamma = GammaSetting::max();
    c.system.base_seed = 18446744073709551615ull;
    c.sweep.ns_set = {1, 3};
    c.sweep.antenna_configs = {{8, 4}};
    c.sweep.gamma_grid = {0.0, 2.5};
    const nlohmann::json j = nlohmann::json::parse(to_json(c).dump());
    CHECK(run_config_from_json(j) == c);

    RunConfig v;
    v.system.gamma = GammaSetting::of(3.25);
    CHECK(run_config_from_json(nlohmann::json::parse(to_json(v).dump())) == v);
}

TEST_CASE("config files: partial, empty and malformed")
{
    const RunConfig partial = load_run_config(scratch_file("partial.json", R"({"kappa_db": 20, "gamma": "min"})"));
    CHECK(partial.system.kappa_db == 20.0);
    CHECK(partial.system.gamma == GammaSetting::min());
    CHECK(partial.system.n_t == 16);

    CHECK(load_run_config(scratch_file("empty.json", "  \n")) == RunConfig{});

    try {
        load_run_config(scratch_file("broken.json", "{\"n_t\": "));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "config");
    }
    CHECK_THROWS_AS(load_run_config("/nonexistent/srbf.json"), ConfigError);
}

TEST_CASE("gamma parsing")
{
    CHECK(GammaSetting::parse("max") == GammaSetting::max());
    CHECK(GammaSetting::parse(" min ") == GammaSetting::min());
    CHECK(GammaSetting::parse("2.5") == GammaSetting::of(2.5));
    CHECK(GammaSetting::parse("0") == GammaSetting::of(0.0));
    CHECK_THROWS_AS(GammaSetting::parse("big"), ConfigError);
    CHECK_THROWS_AS(GammaSetting::parse(""), ConfigError);
    CHECK(GammaSetting::of(1.5).to_string() == "1.5");
    CHECK(GammaSetting::max().to_string() == "max");
}

TEST_CASE("grid, list and antenna parsing")
{
    CHECK(parse_real_grid("-10:2:20", "g").size() == 16);
    CHECK(parse_real_grid("-10:2:20", "g").back() == 20.0);
    CHECK(parse_real_grid("0:0.1:1", "g").size() == 11);
    CHECK(parse_real_grid("1, 2,4", "g") == std::vector<double>{1.0, 2.0, 4.0});
    CHECK_THROWS_AS(parse_real_grid("1:0:2", "g"), ConfigError);
    CHECK_THROWS_AS(parse_real_grid("1:2", "g"), ConfigError);
    CHECK_THROWS_AS(parse_real_grid("a,b", "g"), ConfigError);

    CHECK(parse_int_list("1,2,4", "l") == std::vector<int>{1, 2, 4});
    CHECK_THROWS_AS(parse_int_list("1,2.5", "l"), ConfigError);

    const auto ac = parse_antenna_configs("32x16, 16x8");
    REQUIRE(ac.size() == 2);
    CHECK(ac[0] == std::pair<int, int>{32, 16});
    CHECK(ac[1] == std::pair<int, int>{16, 8});
    CHECK_THROWS_AS(parse_antenna_configs("32-16"), ConfigError);
}
