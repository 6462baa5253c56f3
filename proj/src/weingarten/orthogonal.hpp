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

#include <vector>

namespace strongconv {

/// Perfect matching of {0..2L-1}: partner[i] is the point paired with i.
struct Matching {
    std::vector<int> partner;

    int pairs() const { return static_cast<int>(partner.size()) / 2; }
    /// [[a, b], ...] with a < b.
    std::vector<std::pair<int, int>> pair_list() const;
    bool operator==(const Matching&) const = default;
};

/// All (2L-1)!! matchings, ordered by their pair lists.
std::vector<Matching> matchings(int L);

/// Coset type: the cycles of m1 u m2 have 2k points each; returns the k's.
IntPartition coset_type(const Matching& m1, const Matching& m2);
int loop_count(const Matching& m1, const Matching& m2);

inline constexpr int kMaxOrthogonalL = 4;

struct OrthogonalWeingarten {
    int L = 0;
    long N = 0;
    std::vector<Matching> matchings;
    std::vector<std::vector<Rational>> wg; // indexed like `matchings`

    Json to_json() const;
};

/// Inverse of the matching Gram matrix N^{loops(m1 u m2)}. Requires N >= 2L, L <= 4.
OrthogonalWeingarten wg_orthogonal(int L, long N);

/// Wg(m1, m2) as a function of the coset type, from the reduced p(L) x p(L)
/// system. Types are listed as in partitions(L). Requires N >= L.
std::vector<Rational> wg_orthogonal_by_type(int L, long N);

/// N^L prod_{k=1}^{2L} (N^2 - k^2)^{floor(2L/k)}, as a polynomial in N.
Poly orthogonal_pole_denominator(int L);

/// Interpolates D(N) Wg(type, N) over N = 2L+1, ... and checks three held-out
/// values. True when every coset type clears the denominator.
bool orthogonal_pole_check(int L);

/// E[prod_k O_{rows[k] cols[k]}] for one Haar orthogonal matrix, indices in [0, N).
Rational orthogonal_entry_moment(const std::vector<int>& rows, const std::vector<int>& cols, long N);

/// E tr w(O_1, ..., O_r), star meaning transpose. Requires N >= 2|w|.
Rational orthogonal_word_moment(const Word& w, long N);

namespace detail {
/// Same sum without the public precondition; needs N > |w| after reduction.
Rational orthogonal_word_moment_unchecked(const Word& w, long N);
} // namespace detail

} // namespace strongconv
