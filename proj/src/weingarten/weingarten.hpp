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
#include "common/rational.hpp"
#include "ncpoly/word.hpp"
#include "polycore/poly.hpp"
#include "weingarten/symmetric_group.hpp"

#include <cstdint>
#include <vector>

namespace strongconv {

/// Largest Weingarten sum enumerated for one word (product of (L_g!)^2 or
/// ((2L_g-1)!!)^2 over generators).
inline constexpr std::uint64_t kWeingartenConfigCap = 50'000'000;

/// Wg_L(alpha, N) from the character expansion. Requires N > L.
Rational wg_unitary(const IntPartition& alpha_type, long N);

/// Inverse of the Gram matrix G(s, t) = N^{cycles(s^-1 t)} on S_L, rows and
/// columns in lexicographic permutation order. Independent of the characters.
std::vector<std::vector<Rational>> wg_unitary_gram(int L, long N);

/// N^L prod_{k=1}^L (N^2 - k^2)^{floor(L/k)}, as a polynomial in N.
Poly unitary_pole_denominator(int L);

/// Numerator n_alpha(N) with Wg_L(alpha, N) = n_alpha(N) / unitary_pole_denominator(L).
/// Each character term is divided exactly; a nonzero remainder throws Inconsistency.
Poly wg_unitary_numerator(const IntPartition& alpha_type);

/// Taylor coefficients in x = 1/N of Wg_L(alpha, 1/x), orders 0..order.
std::vector<Rational> wg_unitary_series(const IntPartition& alpha_type, int order);

/// Representative under rotation, reversal, relabelling of generators by first
/// occurrence and per-generator star flips. Applied after cyclic reduction.
Word compact_canonical_word(const Word& w);

/// E tr w(U_1, ..., U_r) for independent Haar unitaries, N > |w|.
Rational unitary_word_moment(const Word& w, long N);

/// Taylor coefficients of x -> E tr w at N = 1/x, orders 0..order.
std::vector<Rational> unitary_word_series(const Word& w, int order);

/// Size of the per-word profile cache (unitary and orthogonal).
std::size_t weingarten_profile_cache_size();

} // namespace strongconv
