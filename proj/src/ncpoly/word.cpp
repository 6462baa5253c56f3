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

#include "ncpoly/word.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <sstream>

namespace strongconv {

const char* model_name(FreeModel m)
{
    return m == FreeModel::Semicircular ? "semicircular" : "haar";
}

FreeModel parse_model(const std::string& name)
{
    if (name == "semicircular" || name == "gue" || name == "goe" || name == "gse")
        return FreeModel::Semicircular;
    if (name == "haar" || name == "unitary" || name == "orthogonal" || name == "symplectic")
        return FreeModel::HaarUnitary;
    fail(ErrorCode::Parse, "unknown free model '" + name + "'");
}

Word word_adjoint(const Word& w, FreeModel model)
{
    Word out(w.rbegin(), w.rend());
    if (model == FreeModel::HaarUnitary)
        for (auto& l : out)
            l.star = !l.star;
    return out;
}

bool has_star(const Word& w)
{
    return std::any_of(w.begin(), w.end(), [](const Letter& l) { return l.star; });
}

int max_generator(const Word& w)
{
    int m = 0;
    for (const auto& l : w)
        m = std::max(m, l.gen);
    return m;
}

Word reduce_unitary(const Word& w)
{
    Word st;
    for (const auto& l : w) {
        if (!st.empty() && st.back() == l.inverse())
            st.pop_back();
        else
            st.push_back(l);
    }
    return st;
}

Word cyclically_reduce(const Word& w)
{
    Word r = reduce_unitary(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word parse_word(const std::string& text)
{
    Word w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }),
                  tok.end());
        if (tok.empty())
            continue;
        Letter l;
        if (tok.back() == '*') {
            l.star = true;
            tok.pop_back();
        }
        std::size_t pos = 0;
        try {
            l.gen = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            fail(ErrorCode::Parse, "bad letter '" + tok + "' in word '" + text + "'");
        }
        if (pos != tok.size() || l.gen < 1)
            fail(ErrorCode::Parse, "bad letter '" + tok + "' in word '" + text + "'");
        w.push_back(l);
    }
    return w;
}

std::string word_to_string(const Word& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(w[i].gen);
        if (w[i].star)
            s += '*';
    }
    return s;
}

Json word_to_json(const Word& w)
{
    Json a = Json::array();
    for (const auto& l : w)
        a.push_back(Json::array({l.gen, l.star}));
    return a;
}

Word word_from_json(const Json& j)
{
    if (!j.is_array())
        fail(ErrorCode::Parse, "word must be a JSON array");
    Word w;
    for (const auto& e : j) {
        Letter l;
        if (e.is_number_integer()) {
            l.gen = e.get<int>();
        } else if (e.is_array() && e.size() == 2 && e[0].is_number_integer()) {
            l.gen = e[0].get<int>();
            if (e[1].is_boolean())
                l.star = e[1].get<bool>();
            else if (e[1].is_number_integer())
                l.star = e[1].get<int>() != 0;
            else
                fail(ErrorCode::Parse, "letter star flag must be bool or 0/1");
        } else {
            fail(ErrorCode::Parse, "letter must be [gen, star] or an integer");
        }
        if (l.gen < 1)
            fail(ErrorCode::Parse, "generator index must be >= 1");
        w.push_back(l);
    }
    return w;
}

} // namespace strongconv
