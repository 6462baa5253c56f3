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

// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include "cli/experiment.hpp"
#include "cli/verify.hpp"
#include "common/error.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace strongconv;

namespace {

struct Criterion {
    std::string id;
    double limit_seconds;
    std::function<CheckResult()> run;
};

CheckResult from_experiment(const std::string& id, const std::string& title, const ExperimentConfig& cfg)
{
    CheckResult r;
    r.id = id;
    r.title = title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const ExperimentResult e = run_experiment(cfg);
        r.pass = e.pass;
        r.summary = e.summary;
        r.detail = e.to_json();
    } catch (const Error& err) {
        r.pass = false;
        r.summary = std::string("error: ") + err.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

ExperimentConfig experiment(const std::string& name, const std::string& out, std::uint64_t seed)
{
    ExperimentConfig cfg = parse_config("", "<acceptance>");
    cfg.experiment = name;
    cfg.out_dir = out;
    cfg.seed = seed;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    std::string out = "acceptance_out";
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--out") && i + 1 < argc)
            out = argv[++i];
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
            only = argv[++i];
    }
    VerifyOptions o;

    std::vector<Criterion> all = {
        {"AC1", 120, [&] { return check_exact_wick(o); }},
        {"AC2", 120, [&] { return check_gue_parity(o); }},
        {"AC3", 60, [&] { return check_nu_free(o); }},
        {"AC4", 600, [&] { return check_gse_duality(o, 40, 20000); }},
        {"AC5", 600, [&] { return check_weingarten(o, 8, 20000); }},
        {"AC6", 600, [&] { return check_reconstruction(o); }},
        {"AC7", 600, [&] { return check_sp_duality(o, 20, 20000); }},
        {"AC8", 300, [&] { return check_interpolation(o); }},
        {"AC9", 600, [&] { return check_support(o); }},
        {"AC10", 1200,
         [&] {
             ExperimentConfig cfg = experiment("tail", out + "/tail", o.seed + 10);
             cfg.N_list = {50, 100, 200, 400};
             cfg.eps_list = {0.5};
             cfg.replicas = 1000;
             return from_experiment("AC10", "tail frequency at 2 + 0.5*2 for GUE, N = 50..400", cfg);
         }},
        {"AC11", 1200,
         [&] {
             ExperimentConfig cfg = experiment("rate", out + "/rate", o.seed + 11);
             cfg.N_list = {50, 100, 200, 400};
             cfg.replicas = 400;
             return from_experiment("AC11", "median norm rate for x1 and x1x2+x2x1, N = 50..400", cfg);
         }},
        {"AC12", 120, [&] { return check_test_functions(o); }},
        {"AC13", 600,
         [&] {
             ExperimentConfig cfg = experiment("hayes", out + "/hayes", o.seed + 13);
             cfg.N_list = {40};
             return from_experiment("AC13", "Hayes tensor model median at N = 40, 200 replicas", cfg);
         }},
    };

    int failed = 0;
    for (const auto& c : all) {
        if (!only.empty() && only != c.id)
            continue;
        const CheckResult r = c.run();
        const bool in_time = r.seconds <= c.limit_seconds;
        const bool pass = r.pass && in_time;
        failed += !pass;
        std::printf("%s %s: %s [%.1fs of %.0fs%s]\n", c.id.c_str(), pass ? "PASS" : "FAIL", r.summary.c_str(), r.seconds,
                    c.limit_seconds, in_time ? "" : ", over the time limit");
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
