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

#include <compare>
#include <string>
#include <vector>

namespace strongconv {

/// Which adjoint convention the letters follow: self-adjoint letters
/// (Gaussian / semicircular) or unitary letters (compact groups / Haar).
enum class FreeModel { Semicircular, HaarUnitary };

const char* model_name(FreeModel m);
FreeModel parse_model(const std::string& name);

struct Letter {
    int gen = 1; // 1-based
    bool star = false;

    Letter inverse() const { return {gen, !star}; }
    auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Shorter words first, then lexicographic.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

/// Reversed word; letters are toggled for the unitary model.
Word word_adjoint(const Word& w, FreeModel model);

bool has_star(const Word& w);
int max_generator(const Word& w);

/// Free reduction under u u* = u* u = e.
Word reduce_unitary(const Word& w);
/// Free reduction followed by cancellation across the cyclic boundary.
Word cyclically_reduce(const Word& w);

/// "1,2*,1" <-> word. Empty string is the empty word.
Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

/// [[gen, star], ...]
Json word_to_json(const Word& w);
/// Accepts [[gen, star], ...] with star bool or 0/1, or bare generator integers.
Word word_from_json(const Json& j);

} // namespace strongconv
