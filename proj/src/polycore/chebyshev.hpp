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

#include <functional>
#include <vector>

namespace strongconv {

enum class ChebKind { First, Second };

/// Exact T_j or U_j from the three-term recurrence.
Poly cheb_poly(ChebKind kind, int j);

/// h(x) = sum_j a_j T_j(x/K) on [-K, K].
struct ChebSeries {
    double radius = 1.0;
    std::vector<double> coeffs;
    double truncation_error = 0.0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    /// Clenshaw evaluation; x outside [-K, K] is evaluated by continuation.
    double operator()(double x) const;
};

inline constexpr int kDefaultChebNodes = 4096;
inline constexpr double kDefaultChebDropTol = 1e-14;

/// Chebyshev-node quadrature of f on [-K, K]. `nodes` must be a power of two
/// >= 64. Coefficients of index > nodes/2 are never retained; their magnitude
/// is charged to truncation_error together with the dropped small ones.
ChebSeries cheb_expand(const std::function<double(double)>& f, double radius,
                       int nodes = kDefaultChebNodes, double tol = kDefaultChebDropTol);

/// Exact coefficients a_j with h(x) = sum_j a_j T_j(x/K).
std::vector<Rational> cheb_coeffs_exact(const Poly& h, const Rational& radius);

/// max |h| on [a, b]: 8q+64 Chebyshev nodes, then golden-section refinement
/// around the largest local maxima. Relative accuracy about 1e-10.
double sup_norm(const Poly& h, double a, double b);

/// Bernstein factor (2q / (delta sqrt(1 - (x/delta)^2)))^m, |x| < delta.
double bernstein_rhs(int q, double delta, int m, double x);

/// (2|x|/K)^q * ||h||_[-K,K] for |x| > K, q = deg h.
double extrapolation_bound(const Poly& h, double radius, double x);

struct FunctionalValue {
    double value = 0.0;
    double error_bound = 0.0;
};

/// nu(h) = sum_j a_j nu(T_j(x/K)) from the basis values nu(T_j(./K)).
/// The error bound is truncation_error * growth_envelope, where the envelope
/// bounds |nu(T_j(./K))| over the dropped indices and is supplied by the caller.
FunctionalValue apply_functional(const std::vector<Rational>& basis_values,
                                 const ChebSeries& h, double growth_envelope = 0.0);

/// Exact version for a polynomial given by exact Chebyshev coefficients.
Rational apply_functional_exact(const std::vector<Rational>& basis_values,
                                const std::vector<Rational>& cheb_coeffs);

} // namespace strongconv
