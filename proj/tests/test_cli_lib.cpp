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

#include "doctest.h"

#include "cli/config.hpp"
#include "cli/experiment.hpp"
#include "cli/report.hpp"
#include "cli/verify.hpp"
#include "common/error.hpp"

#include <filesystem>

using namespace strongconv;

namespace {

std::filesystem::path scratch(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("strongconv_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::string error_text(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("config parsing")
{
    const std::string text = "[run]\nexperiment = tail\nseed = 9\nreplicas = 50\n\n[model]\nh = 0, 0, 1/2\nN = 10, 20\n"
                             "eps = 0.5\n";
    const ExperimentConfig c = parse_config(text, "a.ini");
    CHECK(c.experiment == "tail");
    CHECK(c.seed == 9);
    CHECK(c.replicas == 50);
    CHECK(c.N_list == std::vector<long>{10, 20});
    CHECK(c.h == Poly({Rational(0), Rational(0), Rational(1, 2)}));

    // hash ignores key and section order
    const std::string shuffled = "[model]\neps = 0.5\nN = 10, 20\nh = 0, 0, 1/2\n[run]\nreplicas = 50\nseed = 9\n"
                                 "experiment = tail\n";
    CHECK(parse_config(shuffled, "b.ini").hash() == c.hash());
    CHECK(parse_config(text + "[constants]\nc = 2\n", "a.ini").hash() != c.hash());
}

TEST_CASE("config errors carry line context")
{
    CHECK(error_text([] { parse_config("[run]\nreplicas = many\n", "x.ini"); }).rfind("x.ini:2:", 0) == 0);
    CHECK(error_text([] { parse_config("[run]\nreplicas = 0\n", "x.ini"); }).find("x.ini:2") != std::string::npos);
    CHECK(error_text([] { parse_config("[model]\nN = 10, -3\n", "x.ini"); }).find("x.ini:2") != std::string::npos);
    CHECK(error_text([] { parse_config("[model]\nbogus = 1\n", "x.ini"); }).find("unknown key") != std::string::npos);
    CHECK(error_text([] { parse_config("[run\nseed = 1\n", "x.ini"); }).rfind("x.ini:1:", 0) == 0);
    CHECK(error_text([] { parse_config("[model]\npoly = nope.json\n", "x.ini"); }).find("does not exist") !=
          std::string::npos);
    try {
        parse_config("[run]\nreplicas = many\n", "x.ini");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
    }
}

TEST_CASE("malformed polynomial files")
{
    const auto dir = scratch("poly");
    std::filesystem::create_directories(dir);
    write_text_file(dir / "bad.json", "{\"r\": 1, \"D\": 1, \"terms\": [");
    write_text_file(dir / "bad2.json", "{\"r\": 1, \"D\": 1, \"terms\": [{\"word\": [[3, false]], \"matrix\": [[1, 0]]}]}");
    write_text_file(dir / "ok.json", "{\"r\": 1, \"D\": 1, \"terms\": [{\"word\": [[1, false]], \"matrix\": [[1, 0]]}]}");
    for (const char* f : {"bad.json", "bad2.json"}) {
        try {
            load_ncpoly_file(dir / f);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Parse);
            CHECK(std::string(e.what()).find(f) != std::string::npos);
        }
    }
    CHECK(load_ncpoly_file(dir / "ok.json").terms().size() == 1);
}

TEST_CASE("csv quoting and hashing")
{
    CHECK(csv_field("abc") == "abc");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("manifest round trip and report")
{
    const auto dir = scratch("report");
    std::filesystem::create_directories(dir);
    write_text_file(dir / "a.csv", "x,y\r\n1,2\r\n");
    RunManifest m;
    m.config_hash = "abc";
    m.build_id = build_identifier();
    m.seed = 42;
    m.steps = {{"N=10", "ok", ""}};
    m.outputs = {"a.csv"};
    m.results = Json{{"checks", Json::array({Json{{"id", "AC1"}, {"title", "t"}, {"pass", true}, {"summary", "s"}}})}};
    const RunManifest back = RunManifest::from_json(m.to_json());
    CHECK(back.to_json() == m.to_json());

    const Report r = emit_report(m, dir);
    CHECK(r.all_pass);
    CHECK(r.missing.empty());
    CHECK(r.text.find("seed: 42") != std::string::npos);
    CHECK(r.text.find("PASS AC1") != std::string::npos);
    // same manifest, same text
    CHECK(emit_report(m, dir).text == r.text);

    m.outputs.push_back("gone.csv");
    const Report partial = emit_report(m, dir);
    CHECK(partial.missing == std::vector<std::string>{"gone.csv"});
    CHECK(partial.text.find("WARNING: partial report") != std::string::npos);
}

TEST_CASE("experiments keep partial results past a size cap")
{
    const auto dir = scratch("hayes");
    ExperimentConfig cfg = parse_config("", "<t>");
    cfg.experiment = "hayes";
    cfg.out_dir = dir;
    cfg.N_list = {6, 80};
    cfg.replicas = 20;
    cfg.raw["run.replicas"] = "20";
    const ExperimentResult r = run_experiment(cfg);
    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].status == "ok");
    CHECK(r.steps[1].status == "error");
    CHECK(r.rows.size() == 1);
    CHECK_FALSE(r.pass);
    for (const auto& f : r.files)
        CHECK(std::filesystem::exists(dir / f));
    cfg.experiment = "nope";
    CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("tail experiment outputs are deterministic")
{
    const auto d1 = scratch("tail1"), d2 = scratch("tail2");
    ExperimentConfig cfg = parse_config("[run]\nexperiment = tail\nreplicas = 200\nthreads = 1\n[model]\nN = 10, 20\n"
                                        "eps = 0.05\n",
                                        "<t>");
    cfg.out_dir = d1;
    const ExperimentResult a = run_experiment(cfg);
    cfg.threads = 3;
    cfg.out_dir = d2;
    const ExperimentResult b = run_experiment(cfg);
    CHECK(a.rows == b.rows);
    CHECK(read_text_file(d1 / "tail.csv") == read_text_file(d2 / "tail.csv"));
    CHECK(read_text_file(d1 / "tail.csv").rfind("N,eps,threshold,hits", 0) == 0);
}

TEST_CASE("verify suites")
{
    CHECK_THROWS_AS(run_verify("nope", {}), Error);
    const VerifyReport r = run_verify("exact", {});
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].id == "AC1");
    CHECK(r.pass);
    CHECK(all_words(2, 3).size() == 14);
}
