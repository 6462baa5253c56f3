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

#include "cli/report.hpp"

#include "common/error.hpp"

#include <sstream>

namespace strongconv {

namespace {

void collect(const Json& node, std::vector<const Json*>& out)
{
    if (node.is_object()) {
        if (node.contains("pass") && (node.contains("id") || node.contains("experiment"))) {
            out.push_back(&node);
            return;
        }
        for (const auto& [k, v] : node.items())
            collect(v, out);
    } else if (node.is_array()) {
        for (const auto& v : node)
            collect(v, out);
    }
}

} // namespace

Report emit_report(const RunManifest& m, const std::filesystem::path& dir)
{
    Report rep;
    std::ostringstream os;
    os << "# strongconv report\n\n";
    os << "seed: " << m.seed << "\n";
    os << "config: " << m.config_hash << "\n";
    os << "build: " << m.build_id << "\n";
    os << "started: " << m.started << "\n";
    os << "finished: " << m.finished << "\n\n";

    std::vector<const Json*> entries;
    collect(m.results, entries);
    os << "## Results\n\n";
    if (entries.empty())
        os << "(no results recorded)\n";
    for (const Json* e : entries) {
        const bool pass = e->value("pass", false);
        rep.all_pass = rep.all_pass && pass;
        const std::string id = e->contains("id") ? e->at("id").get<std::string>() : e->at("experiment").get<std::string>();
        os << (pass ? "PASS " : "FAIL ") << id;
        if (e->contains("title"))
            os << " " << e->at("title").get<std::string>();
        os << "\n";
        if (e->contains("summary"))
            os << "    " << e->at("summary").get<std::string>() << "\n";
    }
    os << "\n## Steps\n\n";
    for (const auto& s : m.steps) {
        if (s.status != "ok")
            rep.all_pass = false;
        os << "- " << s.name << ": " << s.status << (s.detail.empty() ? "" : " (" + s.detail + ")") << "\n";
    }
    os << "\n## Outputs\n\n";
    for (const auto& f : m.outputs) {
        const bool there = std::filesystem::exists(dir / f);
        if (!there)
            rep.missing.push_back(f);
        os << "- " << f << (there ? "" : " (missing)") << "\n";
    }
    if (!rep.missing.empty())
        os << "\nWARNING: partial report, " << rep.missing.size() << " output file(s) missing\n";
    os << "\noverall: " << (rep.all_pass && rep.missing.empty() ? "PASS" : "FAIL") << "\n";
    rep.text = os.str();
    return rep;
}

Report emit_report_from_dir(const std::filesystem::path& dir)
{
    const auto path = dir / "manifest.json";
    require(std::filesystem::exists(path), ErrorCode::Io, "no manifest.json in " + dir.string());
    return emit_report(RunManifest::from_json(parse_json(read_text_file(path), path.string())), dir);
}

} // namespace strongconv
