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

#include "strongconv/strongconv.h"

#include <json.hpp>

#include <string>
#include <thread>

namespace {

const char* kX1 = R"({"r": 1, "D": 1, "terms": [{"word": [[1, false]], "matrix": [["1", "0"]]}]})";

nlohmann::json take(char* s)
{
    auto j = nlohmann::json::parse(s);
    sc_string_free(s);
    return j;
}

} // namespace

TEST_CASE("C API: handles and JSON round trip")
{
    sc_session* s = nullptr;
    REQUIRE(sc_session_create(&s) == SC_OK);
    sc_poly* p = nullptr;
    REQUIRE(sc_poly_from_json(kX1, &p) == SC_OK);
    char* out = nullptr;
    REQUIRE(sc_poly_to_json(p, &out) == SC_OK);
    CHECK(take(out)["terms"].size() == 1);

    REQUIRE(sc_moments(s, p, R"({"ensemble": "gue", "h": [0, 0, 0, 0, 1], "N": 10})", &out) == SC_OK);
    const auto m = take(out);
    CHECK(m["value"] == "201/100");
    CHECK(m["phi"] == nlohmann::json::array({"2/1", "0/1", "1/1"}));

    REQUIRE(sc_expand(s, p, R"({"ensemble": "goe", "h": [0, 0, 1], "m": 2})", &out) == SC_OK);
    CHECK(take(out)["coeffs"] == nlohmann::json::array({"1/1", "1/1"}));

    REQUIRE(sc_sample(s, p, R"({"ensemble": "gue", "N": 8, "replicas": 20, "h": "0,0,1"})", &out) == SC_OK);
    const auto smp = take(out);
    CHECK(smp["norm"]["count"] == 20);
    CHECK(smp["stats"]["h"]["mean"].get<double>() > 0.5);

    sc_poly_free(p);
    sc_session_destroy(s);
}

TEST_CASE("C API: errors")
{
    sc_session* s = nullptr;
    REQUIRE(sc_session_create(&s) == SC_OK);
    sc_poly* p = nullptr;
    CHECK(sc_poly_from_json("{\"r\": 1", &p) == SC_ERR_PARSE);
    CHECK(p == nullptr);
    CHECK(std::string(sc_last_error()).size() > 0);
    CHECK(sc_poly_load("/nonexistent/p.json", &p) == SC_ERR_IO);
    CHECK(sc_moments(nullptr, nullptr, "{}", nullptr) == SC_ERR_INVALID_ARGUMENT);
    CHECK(std::string(sc_status_name(SC_ERR_SIZE_CAP)).size() > 0);

    REQUIRE(sc_poly_from_json(kX1, &p) == SC_OK);
    char* out = nullptr;
    CHECK(sc_moments(s, p, R"({"ensemble": "haar-u", "h": [0, 1]})", &out) == SC_ERR_DOMAIN);
    CHECK(sc_moments(s, p, R"({"ensemble": "nope"})", &out) == SC_ERR_PARSE);
    CHECK(sc_moments(s, p, "[1, 2]", &out) == SC_ERR_PARSE);
    int passed = -1;
    CHECK(sc_verify(s, "nope", nullptr, &passed, &out) == SC_ERR_PARSE);

    // the last error is per thread
    std::string other;
    std::thread t([&] { other = sc_last_error(); });
    t.join();
    CHECK(other.empty());
    CHECK(std::string(sc_last_error()).find("nope") != std::string::npos);

    sc_poly_free(p);
    sc_session_destroy(s);
}

TEST_CASE("C API: verify and report")
{
    sc_session* s = nullptr;
    REQUIRE(sc_session_create(&s) == SC_OK);
    sc_session_set_seed(s, 5);
    char* out = nullptr;
    int passed = 0;
    REQUIRE(sc_verify(s, "exact", nullptr, &passed, &out) == SC_OK);
    CHECK(passed == 1);
    CHECK(take(out)["checks"][0]["id"] == "AC1");
    CHECK(sc_report(s, "/nonexistent", &passed, &out) == SC_ERR_IO);
    sc_session_destroy(s);
}
