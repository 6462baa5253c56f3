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

#include "polycore/poly.hpp"

namespace strongconv {

struct InterpReport {
    int degree = 0;
    double delta = 0.0;
    double ratio = 0.0;
    double norm = 0.0;        // ||h||_[0, delta]
    double sample_sup = 0.0;  // sup |h(1/N)| over 1/N <= 2 delta, N <= N_cap
    int n_samples_used = 0;

    Json to_json() const;
};

/// Largest N sampled for degree q and width delta: max(10q, ceil(4/delta)).
long sample_cap(int q, double delta);

/// ||h||_[0,delta] / sup_{1/N <= 2 delta} |h(1/N)|. Requires 0 < delta <= 1/(24 deg h).
InterpReport inverse_integer_ratio(const Poly& h, double delta);

/// T_q(qx) prod_{j=1}^q (1 - jx).
Poly optimality_example(int q);

/// ||h||_[-1/2,1/2] / max_{k=1..2M} |h(-1 + (2k-1)/(2M))|. Requires deg h <= M.
double rakhmanov_ratio(const Poly& h, int M);

/// Degree-7q Taylor truncation of 1/(2+x)^q at 0.
Poly approx_inverse_shifted_power(int q);

/// prod_{j=1}^q (1 - (jx)^2)^{floor(q/j)}.
Poly gq_poly(int q);

/// Degree-2bq Taylor truncation of 1/g_q at 0.
Poly approx_inverse_gq(int q, int b);

struct RationalBernsteinReport {
    int p = 0;                 // deg f
    int q = 0;
    int m = 0;
    Rational taylor_coeff;     // r^{(m)}(0)/m!, exact
    double norm_iq = 0.0;      // sup over 1/N, |N| > q (with the N -> infinity limit r(0))
    double rhs = 0.0;          // (e^{-p}(Cp)^m + (Cp)^{2m}/m!) * norm_iq
    double kappa = 0.0;        // (|coeff| m! / norm_iq)^{1/(2m)} / p
    bool holds = false;

    Json to_json() const;
};

/// Compares the m-th Taylor coefficient of r = f/g_q at 0 with the rational
/// Bernstein right-hand side for the constant C (default 1).
RationalBernsteinReport rational_bernstein_check(const Poly& f, int q, int m, double C = 1.0);

} // namespace strongconv
