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

#include "common/json_io.hpp"

#include "common/error.hpp"

#include <fstream>
#include <sstream>

namespace strongconv {

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out << text;
}

Rational rational_from_json(const Json& value)
{
    if (value.is_string())
        return parse_rational(value.get<std::string>());
    if (value.is_number_integer())
        return Rational(Integer(value.dump(), 10));
    if (value.is_number_float())
        return rational_from_double(value.get<double>());
    fail(ErrorCode::Parse, "expected a rational, got " + value.dump());
}

Json rational_to_json(const Rational& value)
{
    return to_fraction_string(value);
}

Json parse_json(const std::string& text, const std::string& context)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::Parse, context + ": " + e.what());
    }
}

} // namespace strongconv
