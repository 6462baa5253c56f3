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

#include "cli/config.hpp"

#include <string>
#include <vector>

namespace strongconv {

struct ExperimentResult {
    std::string name;
    bool pass = false;
    std::string summary;
    Json rows = Json::array();
    std::vector<ManifestStep> steps;
    std::vector<std::string> files;   // relative to the output directory

    Json to_json() const;
};

/// tail | rate | concentration | hayes. Writes CSV tables and two-column
/// series files into cfg.out_dir; empty config fields take per-experiment
/// defaults (see README).
ExperimentResult run_experiment(const ExperimentConfig& cfg);
const std::vector<std::string>& experiment_names();

ExperimentResult tail_experiment(const ExperimentConfig& cfg);
ExperimentResult rate_experiment(const ExperimentConfig& cfg);
ExperimentResult concentration_experiment(const ExperimentConfig& cfg);
ExperimentResult hayes_experiment(const ExperimentConfig& cfg);

/// RFC 4180 quoting for one field.
std::string csv_field(const std::string& s);

} // namespace strongconv
