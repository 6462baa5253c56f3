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

#include "common/rational.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace strongconv {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Accepts "p/q" strings, decimal strings, and JSON integers/floats (floats exactly).
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

Json parse_json(const std::string& text, const std::string& context);

} // namespace strongconv
