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

#include "cli/config.hpp"

#include "common/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <set>
#include <sstream>

namespace strongconv {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ','))
        if (!trim(cur).empty())
            out.push_back(trim(cur));
    return out;
}

// line of each "section.key", for diagnostics after the parse
std::map<std::string, int> key_lines(const std::string& text)
{
    std::map<std::string, int> out;
    std::istringstream is(text);
    std::string line, section;
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        const std::string t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#')
            continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq != std::string::npos)
            out[section + "." + trim(t.substr(0, eq))] = n;
    }
    return out;
}

const std::set<std::string> kKnownKeys = {
    "run.experiment", "run.ensemble", "run.seed", "run.replicas", "run.threads", "run.out",
    "model.poly", "model.h", "model.N", "model.eps",
    "constants.c", "constants.dense_cap", "constants.p_max", "constants.hayes_r"};

} // namespace

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Poly parse_poly_coeffs(const std::string& text)
{
    std::vector<Rational> c;
    for (const auto& item : split_list(text))
        c.push_back(rational_from_json(Json(item)));
    require(!c.empty(), ErrorCode::Parse, "empty coefficient list");
    return Poly(c);
}

std::vector<long> parse_long_list(const std::string& text, const std::string& key)
{
    std::vector<long> out;
    for (const auto& item : split_list(text)) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == item.size(), ErrorCode::Parse, key + ": '" + item + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key)
{
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == item.size(), ErrorCode::Parse, key + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    return out;
}

NCPoly load_ncpoly_file(const std::filesystem::path& path)
{
    const std::string text = read_text_file(path);
    try {
        return NCPoly::from_json(parse_json(text, path.string()));
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        if (msg.rfind(path.string(), 0) == 0)
            fail(ErrorCode::Parse, msg);
        fail(ErrorCode::Parse, path.string() + ": " + msg);
    }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin, const std::filesystem::path& base_dir)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream is(text);
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        fail(ErrorCode::Parse, origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    const auto lines = key_lines(text);
    auto where = [&](const std::string& key) {
        const auto it = lines.find(key);
        return origin + (it == lines.end() ? std::string() : ":" + std::to_string(it->second)) + ": ";
    };

    ExperimentConfig cfg;
    cfg.origin = origin;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            fail(ErrorCode::Parse, where(section) + "key '" + section + "' outside a section");
        for (const auto& [key, node] : body) {
            const std::string full = section + "." + key;
            if (!kKnownKeys.count(full))
                fail(ErrorCode::Parse, where(full) + "unknown key '" + full + "'");
            cfg.raw[full] = trim(node.data());
        }
    }
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = cfg.raw.find(key);
        if (it == cfg.raw.end())
            return std::nullopt;
        return it->second;
    };
    auto as_long = [&](const std::string& key, long lo) {
        const auto v = parse_long_list(*get(key), where(key) + key);
        require(v.size() == 1, ErrorCode::Parse, where(key) + key + " takes one integer");
        require(v[0] >= lo, ErrorCode::Parse, where(key) + key + " must be >= " + std::to_string(lo));
        return v[0];
    };
    auto as_double = [&](const std::string& key) {
        const auto v = parse_double_list(*get(key), where(key) + key);
        require(v.size() == 1, ErrorCode::Parse, where(key) + key + " takes one number");
        return v[0];
    };
    try {
        if (auto v = get("run.experiment"))
            cfg.experiment = *v;
        if (auto v = get("run.ensemble"))
            cfg.ensemble = *v;
        if (get("run.seed"))
            cfg.seed = static_cast<std::uint64_t>(as_long("run.seed", 0));
        if (get("run.replicas"))
            cfg.replicas = static_cast<int>(as_long("run.replicas", 1));
        if (get("run.threads"))
            cfg.threads = static_cast<int>(as_long("run.threads", 0));
        if (auto v = get("run.out"))
            cfg.out_dir = *v;
        if (auto v = get("model.poly")) {
            cfg.poly_file = base_dir / *v;
            require(std::filesystem::exists(cfg.poly_file), ErrorCode::Parse,
                    where("model.poly") + "poly file '" + cfg.poly_file.string() + "' does not exist");
            cfg.P = load_ncpoly_file(cfg.poly_file);
        }
        if (auto v = get("model.h"))
            cfg.h = parse_poly_coeffs(*v);
        if (auto v = get("model.N")) {
            cfg.N_list = parse_long_list(*v, where("model.N") + "model.N");
            for (long n : cfg.N_list)
                require(n > 0, ErrorCode::Parse, where("model.N") + "N values must be positive");
        }
        if (auto v = get("model.eps")) {
            cfg.eps_list = parse_double_list(*v, where("model.eps") + "model.eps");
            for (double e : cfg.eps_list)
                require(e > 0, ErrorCode::Parse, where("model.eps") + "eps values must be positive");
        }
        if (get("constants.c")) {
            cfg.c = as_double("constants.c");
            require(cfg.c > 0, ErrorCode::Parse, where("constants.c") + "c must be positive");
        }
        if (get("constants.dense_cap"))
            cfg.dense_cap = as_long("constants.dense_cap", 1);
        if (get("constants.p_max"))
            cfg.p_max = static_cast<int>(as_long("constants.p_max", 1));
        if (get("constants.hayes_r"))
            cfg.hayes_r = static_cast<int>(as_long("constants.hayes_r", 1));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse)
            throw;
        fail(ErrorCode::Parse, origin + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    return parse_config(read_text_file(path), path.string(), path.parent_path());
}

Json ExperimentConfig::to_json() const
{
    Json j = Json::object();
    for (const auto& [k, v] : raw)
        j[k] = v;
    return Json{{"origin", origin}, {"hash", hash()}, {"seed", seed}, {"keys", j}};
}

std::string ExperimentConfig::hash() const
{
    // std::map keeps the keys sorted
    std::string canon;
    for (const auto& [k, v] : raw)
        canon += k + "=" + v + "\n";
    return fnv1a_hex(canon);
}

std::string build_identifier()
{
    std::string id = "strongconv-0.1.0";
#if defined(__VERSION__)
    id += " (" __VERSION__ ")";
#endif
    return id;
}

std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json RunManifest::to_json() const
{
    Json steps_j = Json::array();
    for (const auto& s : steps)
        steps_j.push_back(Json{{"name", s.name}, {"status", s.status}, {"detail", s.detail}});
    return Json{{"config_hash", config_hash},
                {"build", build_id},
                {"started", started},
                {"finished", finished},
                {"seed", seed},
                {"steps", steps_j},
                {"outputs", outputs},
                {"results", results}};
}

RunManifest RunManifest::from_json(const Json& j)
{
    RunManifest m;
    try {
        m.config_hash = j.value("config_hash", "");
        m.build_id = j.value("build", "");
        m.started = j.value("started", "");
        m.finished = j.value("finished", "");
        m.seed = j.value("seed", std::uint64_t{0});
        for (const auto& s : j.value("steps", Json::array()))
            m.steps.push_back({s.value("name", ""), s.value("status", ""), s.value("detail", "")});
        for (const auto& o : j.value("outputs", Json::array()))
            m.outputs.push_back(o.get<std::string>());
        m.results = j.value("results", Json::object());
    } catch (const std::exception& e) {
        fail(ErrorCode::Parse, std::string("manifest: ") + e.what());
    }
    return m;
}

} // namespace strongconv
