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

#include "ncpoly/ncpoly.hpp"
#include "polycore/poly.hpp"

#include <cstdint>

namespace strongconv {

enum class Gaussian { GUE, GOE };

const char* gaussian_name(Gaussian e);

/// E[tr word] as an exact polynomial in x = 1/N.
struct GenusPoly {
    Poly poly;
    Gaussian ensemble = Gaussian::GUE;

    Json to_json() const;
};

/// Longest word accepted by the pairing enumerator.
inline constexpr std::size_t kMaxGenusWordLength = 16;
/// Upper bound on pairings x twists visited for one GOE word.
inline constexpr std::uint64_t kGoeLeafBudget = 60'000'000;

/// Sum over label-matching pairings of x^{n+1-loops}. Single-letter words use
/// the Harer-Zagier recursion and have no length limit.
GenusPoly gue_word_polynomial(const Word& w);
/// Sum over pairings and twist choices of x^{n+1-loops}.
GenusPoly goe_word_polynomial(const Word& w);
GenusPoly word_polynomial(Gaussian e, const Word& w);

/// Plain pairing enumeration without the single-letter shortcut or the cache.
Poly enumerate_gluings(Gaussian e, const Word& w);

/// GOE word polynomial evaluated at x = -1/(2N).
Rational gse_expectation(const Word& w, long N);

/// Phi_h = sum_w tr_D(B_w) word_polynomial(w) where h(P) = sum_w B_w w.
GenusPoly spectral_statistic_poly(Gaussian e, const NCPoly& p, const Poly& h);

/// Constant term of the GUE statistic, checked against the free moment.
Rational nu0_crosscheck(const NCPoly& p, const Poly& h);

/// eps[n][g]: number of genus-g gluings of a 2n-gon, for n <= n_max, g <= g_max.
std::vector<std::vector<Integer>> harer_zagier_table(int n_max, int g_max);

/// Exact E[tr X_{i1} ... X_{ik}] at dimension N by summing over all index
/// tuples with the real-coordinate decomposition of the entries.
Rational entry_level_expectation(Gaussian e, const Word& w, int N);

/// Representative of w under rotation, reversal and relabelling of generators.
Word canonical_trace_word(const Word& w);

} // namespace strongconv
