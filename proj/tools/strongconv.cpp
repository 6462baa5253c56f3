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

// strongconv command-line front end; talks to the library only through the C API.
#include "strongconv/strongconv.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitParse = 2;

const char* kDefaultPoly = R"({"r": 1, "D": 1, "terms": [{"word": [[1, false]], "matrix": [["1", "0"]]}]})";

struct Session {
    sc_session* s = nullptr;
    Session()
    {
        if (sc_session_create(&s) != SC_OK)
            throw std::runtime_error("cannot create session");
    }
    ~Session()
    {
        sc_session_save_cache(s);
        sc_session_destroy(s);
    }
};

struct PolyHandle {
    sc_poly* p = nullptr;
    ~PolyHandle() { sc_poly_free(p); }
};

struct Owned {
    char* text = nullptr;
    ~Owned() { sc_string_free(text); }
};

int report_error(sc_status st)
{
    std::cerr << "strongconv: " << sc_status_name(st) << ": " << sc_last_error() << "\n";
    return st == SC_ERR_PARSE ? kExitParse : kExitFailed;
}

std::string json_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

// h given as "0,0,1" goes over as a string and is split by the library
std::string h_field(const std::string& h)
{
    return h.empty() ? "" : ", \"h\": \"" + json_escape(h) + "\"";
}

void write_out(const std::string& out_dir, const std::string& name, const std::string& text)
{
    if (out_dir.empty())
        return;
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary);
    f << text << "\n";
    if (!f)
        throw std::runtime_error("cannot write " + (std::filesystem::path(out_dir) / name).string());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"strongconv: exact genus/Weingarten expansions and random-matrix norm experiments"};
    app.require_subcommand(1);
    // -h is taken by --h (the polynomial h)
    app.set_help_flag("--help", "Print this help message and exit");

    std::string config, out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    app.add_option("--config", config, "INI configuration file");
    app.add_option("--seed", seed, "random seed (overrides the config)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

    std::string poly_file, ensemble = "gue", h, group = "u";
    long N = 0;
    int m = 3, replicas = 100, k_max = 3, optimality = 0;
    double eps = 0.0, delta = 0.0;
    std::string csv, suite = "all", exp_name, report_dir;

    auto* moments = app.add_subcommand("moments", "exact E tr h(P) or its 1/N polynomial");
    moments->add_option("--poly", poly_file, "polynomial JSON file (default x1)");
    moments->add_option("--ensemble", ensemble, "gue|goe|gse|haar-u|haar-o|haar-sp|free|free-haar");
    moments->add_option("--h", h, "coefficients of h, lowest first, e.g. 0,0,1");
    moments->add_option("--N", N, "matrix size");

    auto* psi = app.add_subcommand("psi", "rational function Psi_h for U(N) or O(N)");
    psi->add_option("--poly", poly_file, "polynomial JSON file (default x1)");
    psi->add_option("--group", group, "u|o");
    psi->add_option("--h", h, "coefficients of h");

    auto* expand = app.add_subcommand("expand", "1/N expansion coefficients or the support test");
    expand->add_option("--poly", poly_file, "polynomial JSON file (default x1)");
    expand->add_option("--ensemble", ensemble, "gue|goe|haar-u");
    expand->add_option("--h", h, "coefficients of h");
    expand->add_option("--m", m, "number of coefficients")->check(CLI::PositiveNumber);
    expand->add_option("--support-eps", eps, "run the support test at this eps instead");
    expand->add_option("--k-max", k_max, "largest k for the support test");

    auto* interp = app.add_subcommand("interp-check", "sup over [0,delta] against samples at 1/N");
    interp->add_option("--h", h, "coefficients of h");
    interp->add_option("--delta", delta, "interval width (default 1/(24 deg h))");
    interp->add_option("--optimality", optimality, "check the optimality example h_q instead");

    auto* sample = app.add_subcommand("sample", "Monte Carlo norms and trace statistics");
    sample->add_option("--poly", poly_file, "polynomial JSON file (default x1)");
    sample->add_option("--ensemble", ensemble, "gue|goe|gse|haar-u|haar-o|haar-sp|hayes");
    sample->add_option("--N", N, "matrix size")->required();
    sample->add_option("--replicas", replicas, "replica count")->check(CLI::PositiveNumber);
    sample->add_option("--h", h, "trace statistic coefficients");
    sample->add_option("--csv", csv, "per-replica CSV path (default OUT/samples.csv when --out is set)");

    auto* verify = app.add_subcommand("verify", "run an invariant battery");
    verify->add_option("suite", suite, "exact|parity|duality|interp|support|weingarten|all");

    auto* experiment = app.add_subcommand("experiment", "tail|rate|concentration|hayes pipelines");
    experiment->add_option("name", exp_name, "experiment (default from --config)");

    auto* report = app.add_subcommand("report", "summarize a run directory");
    report->add_option("dir", report_dir, "run directory (default --out)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        Session session;
        if (seed)
            sc_session_set_seed(session.s, *seed);
        sc_session_set_threads(session.s, threads);
        if (const char* cache = std::getenv("STRONGCONV_CACHE"); cache && *cache) {
            if (sc_status st = sc_session_set_cache(session.s, cache); st != SC_OK)
                return report_error(st);
        }

        auto load_poly = [&](PolyHandle& ph) {
            return poly_file.empty() ? sc_poly_from_json(kDefaultPoly, &ph.p) : sc_poly_load(poly_file.c_str(), &ph.p);
        };
        Owned out;
        int passed = 1;
        sc_status st = SC_OK;
        std::string out_name = "result.json";

        if (moments->parsed() || psi->parsed() || expand->parsed() || sample->parsed()) {
            PolyHandle ph;
            if ((st = load_poly(ph)) != SC_OK)
                return report_error(st);
            if (moments->parsed()) {
                std::string req = "{\"ensemble\": \"" + json_escape(ensemble) + "\"" + h_field(h);
                if (N > 0)
                    req += ", \"N\": " + std::to_string(N);
                st = sc_moments(session.s, ph.p, (req + "}").c_str(), &out.text);
                out_name = "moments.json";
            } else if (psi->parsed()) {
                const std::string req = "{\"group\": \"" + json_escape(group) + "\"" + h_field(h) + "}";
                st = sc_psi(session.s, ph.p, req.c_str(), &out.text);
                out_name = "psi.json";
            } else if (expand->parsed()) {
                std::string req = "{\"ensemble\": \"" + json_escape(ensemble) + "\"" + h_field(h) +
                                  ", \"m\": " + std::to_string(m);
                if (eps > 0)
                    req += ", \"support\": {\"eps\": " + std::to_string(eps) + ", \"k_max\": " + std::to_string(k_max) + "}";
                st = sc_expand(session.s, ph.p, (req + "}").c_str(), &out.text);
                out_name = "expand.json";
            } else {
                std::string req = "{\"ensemble\": \"" + json_escape(ensemble) + "\", \"N\": " + std::to_string(N) +
                                  ", \"replicas\": " + std::to_string(replicas) + h_field(h);
                if (csv.empty() && !out_dir.empty()) {
                    std::filesystem::create_directories(out_dir);
                    csv = (std::filesystem::path(out_dir) / "samples.csv").string();
                }
                if (!csv.empty())
                    req += ", \"csv\": \"" + json_escape(csv) + "\"";
                st = sc_sample(session.s, ph.p, (req + "}").c_str(), &out.text);
                out_name = "sample.json";
            }
        } else if (interp->parsed()) {
            std::string req;
            if (optimality > 0)
                req = "{\"optimality\": " + std::to_string(optimality) + "}";
            else {
                if (h.empty()) {
                    std::cerr << "strongconv: interp-check needs --h or --optimality\n";
                    return kExitParse;
                }
                req = "{" + h_field(h).substr(2);
                if (delta > 0)
                    req += ", \"delta\": " + std::to_string(delta);
                req += "}";
            }
            st = sc_interp_check(session.s, req.c_str(), &out.text);
            out_name = "interp.json";
        } else if (verify->parsed()) {
            st = sc_verify(session.s, suite.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &passed, &out.text);
            out_name.clear();
        } else if (experiment->parsed()) {
            if (config.empty() && exp_name.empty()) {
                std::cerr << "strongconv: experiment needs a name or --config\n";
                return kExitParse;
            }
            st = sc_experiment(session.s, config.empty() ? nullptr : config.c_str(),
                               exp_name.empty() ? nullptr : exp_name.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
                               &passed, &out.text);
            out_name.clear();
        } else if (report->parsed()) {
            const std::string dir = report_dir.empty() ? out_dir : report_dir;
            if (dir.empty()) {
                std::cerr << "strongconv: report needs a directory\n";
                return kExitParse;
            }
            st = sc_report(session.s, dir.c_str(), &passed, &out.text);
            if (st == SC_OK)
                write_out(dir, "report.md", out.text);
            out_name.clear();
        }
        if (st != SC_OK)
            return report_error(st);
        std::cout << out.text << "\n";
        if (!out_name.empty())
            write_out(out_dir, out_name, out.text);
        return passed ? kExitOk : kExitFailed;
    } catch (const std::exception& e) {
        std::cerr << "strongconv: " << e.what() << "\n";
        return kExitFailed;
    }
}
