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
#include "ncpoly/ncpoly.hpp"
#include "polycore/poly.hpp"

#include <vector>

namespace strongconv {

/// num(x) / den(x) with x = 1/N.
struct RationalFn {
    Poly num;
    Poly den;

    Rational operator()(const Rational& x) const;
    double eval(double x) const;
    /// Taylor coefficients at 0, orders 0..order.
    std::vector<Rational> taylor(int order) const;

    /// {num: [...], den: [...]}, coefficients lowest degree first.
    Json to_json() const;
    static RationalFn from_json(const Json& j);
};

enum class CompactGroup { Unitary, Orthogonal };
const char* compact_group_name(CompactGroup g);

struct PsiReport {
    CompactGroup group = CompactGroup::Unitary;
    int q = 0;          // deg h
    int q0 = 0;         // deg P
    int L = 0;          // q q0, at least 1
    int degree_bound = 0;
    int observed_degree = 0;
    std::vector<long> sample_N;
    std::vector<long> heldout_N;
    RationalFn psi;

    Json to_json() const;
};

/// floor(3 L (1 + ln L)) for U(N), floor(6 L (1 + ln L)) for O(N).
int psi_degree_bound(CompactGroup g, int L);

/// E tr_N (x) tr_D h(P) at one N, summed word by word. P must be self-adjoint.
Rational compact_expectation(const NCPoly& P, const Poly& h, CompactGroup g, long N);

/// Psi_h with fixed denominator g_{qq0}, numerator by exact interpolation at
/// N = L+1 .. L+1+bound, then three held-out N. A held-out mismatch throws
/// Inconsistency; for U(N) an odd numerator also throws.
PsiReport reconstruct_psi(const NCPoly& P, const Poly& h, CompactGroup g);

/// Psi for a single word (no self-adjointness needed), orthogonal group.
PsiReport reconstruct_word_psi(const Word& w, CompactGroup g);

/// E tr w(S_1, ...) for Haar Sp(N) acting on C^{2N}, star meaning adjoint,
/// via Psi_w(-1/(2N)). Requires N >= 2|w|.
Rational symplectic_expectation(const Word& w, long N);

/// E tr h(P) over Sp(N), via the orthogonal Psi_h at -1/(2N).
Rational symplectic_spectral(const NCPoly& P, const Poly& h, long N);

} // namespace strongconv
