/*
   Copyright 2026 The strongconv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "common/json_io.hpp"
#include "ncpoly/ncpoly.hpp"
#include "polycore/poly.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace strongconv {

/// Flat INI configuration. Sections [run], [model], [constants]; see README.
struct ExperimentConfig {
    std::string experiment;          // tail | rate | concentration | hayes
    std::string ensemble = "gue";
    std::filesystem::path poly_file; // JSON NCPoly; empty means x1
    std::optional<NCPoly> P;
    Poly h = Poly::x();
    std::vector<long> N_list;
    std::vector<double> eps_list;
    int replicas = 1000;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "out";
    int threads = 0;
    // constant overrides
    double c = 1.0;
    long dense_cap = 4000;
    int p_max = 12;
    int hayes_r = 1;

    /// every key as "section.key" -> raw text
    std::map<std::string, std::string> raw;
    std::string origin;

    Json to_json() const;
    /// FNV-1a over the sorted key=value lines; reordering keys keeps it.
    std::string hash() const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& origin,
                              const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

/// JSON NCPoly file; Parse errors carry the path.
NCPoly load_ncpoly_file(const std::filesystem::path& path);
/// "0, 0, 1/2" lowest degree first.
Poly parse_poly_coeffs(const std::string& text);
std::vector<long> parse_long_list(const std::string& text, const std::string& key);
std::vector<double> parse_double_list(const std::string& text, const std::string& key);

std::string fnv1a_hex(const std::string& bytes);

struct ManifestStep {
    std::string name;
    std::string status; // ok | failed | error
    std::string detail;
};

struct RunManifest {
    std::string config_hash;
    std::string build_id;
    std::string started;
    std::string finished;
    std::uint64_t seed = 0;
    std::vector<ManifestStep> steps;
    std::vector<std::string> outputs;
    Json results = Json::object();

    Json to_json() const;
    static RunManifest from_json(const Json& j);
};

std::string build_identifier();
std::string utc_timestamp();

} // namespace strongconv
