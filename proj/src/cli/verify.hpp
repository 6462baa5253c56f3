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

#include "common/json_io.hpp"
#include "ncpoly/word.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace strongconv {

struct CheckResult {
    std::string id;     // AC1 .. AC13
    std::string title;
    bool pass = false;
    std::string summary;
    Json detail = Json::object();
    double seconds = 0.0;

    Json to_json() const;
};

struct VerifyOptions {
    std::uint64_t seed = 20261019;
    int threads = 0;
};

/// All words of length 1..max_len over r star-free letters.
std::vector<Word> all_words(int r, int max_len);

CheckResult check_exact_wick(const VerifyOptions& o);        // AC1
CheckResult check_gue_parity(const VerifyOptions& o);        // AC2
CheckResult check_nu_free(const VerifyOptions& o);           // AC3
CheckResult check_gse_duality(const VerifyOptions& o, long N = 40, int replicas = 20000);   // AC4
CheckResult check_weingarten(const VerifyOptions& o, long N = 8, int replicas = 20000);     // AC5
CheckResult check_reconstruction(const VerifyOptions& o);    // AC6
CheckResult check_sp_duality(const VerifyOptions& o, long N = 20, int replicas = 20000);    // AC7
CheckResult check_interpolation(const VerifyOptions& o);     // AC8
CheckResult check_support(const VerifyOptions& o);           // AC9
CheckResult check_test_functions(const VerifyOptions& o);    // AC12

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;

    Json to_json() const;
};

/// exact | parity | duality | interp | support | weingarten | all
VerifyReport run_verify(const std::string& suite, const VerifyOptions& o);
const std::vector<std::string>& verify_suites();

} // namespace strongconv
