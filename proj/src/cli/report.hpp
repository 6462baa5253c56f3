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

#include <filesystem>
#include <string>
#include <vector>

namespace strongconv {

struct Report {
    std::string text;                 // markdown
    std::vector<std::string> missing; // listed outputs not found under dir
    bool all_pass = true;
};

/// Human-readable summary of a manifest. results holds either a verify
/// report ({checks: [...]}) or experiment results ({experiments: [...]}),
/// or both; every entry with an id/name and pass flag gets one line.
Report emit_report(const RunManifest& manifest, const std::filesystem::path& dir);

/// Reads dir/manifest.json.
Report emit_report_from_dir(const std::filesystem::path& dir);

} // namespace strongconv
