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
#include "polycore/chebyshev.hpp"
#include "polycore/poly.hpp"
#include "sampler/ensembles.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace strongconv {

/// Ensembles with an exact 1/N expansion of E tr h(P).
enum class ExpansionEnsemble { GUE, GOE, HaarU };
const char* expansion_ensemble_name(ExpansionEnsemble e);
ExpansionEnsemble parse_expansion_ensemble(const std::string& s);
FreeModel expansion_model(ExpansionEnsemble e);

struct ExpansionResult {
    ExpansionEnsemble ensemble = ExpansionEnsemble::GUE;
    int order = 0;
    bool exact = true;
    std::vector<Rational> coeffs;   // exact path
    std::vector<double> values;     // smooth path (and exact values as doubles)
    std::vector<double> errors;     // smooth path error bars, zero when exact

    Json to_json() const;
};

/// First m Taylor coefficients of Phi_h at 0.
ExpansionResult nu_coeffs(ExpansionEnsemble e, const NCPoly& P, const Poly& h, int m);
/// First m Taylor coefficients of Psi_h at 0 (Haar unitary).
ExpansionResult mu_coeffs(const NCPoly& P, const Poly& h, int m);
/// Dispatches on the ensemble.
ExpansionResult expansion_coeffs(ExpansionEnsemble e, const NCPoly& P, const Poly& h, int m);

/// P = c (1_D (x) a) + d 1_D where a is x_g (Gaussian) or u_g + u_g^* (Haar).
struct SingleLetterForm {
    int gen = 1;
    Rational scale;
    Rational shift;
};
std::optional<SingleLetterForm> single_letter_form(const NCPoly& P, ExpansionEnsemble e);

/// nu_k(x^n) for n = 0..n_max as a functional of h, i.e. the k-th coefficient
/// of E tr P^n. Closed forms for single-letter P (Harer-Zagier counts for GUE,
/// central binomials for u + u^*); otherwise the exact engines, stopping
/// early at their size caps.
std::vector<Rational> monomial_functional(ExpansionEnsemble e, const NCPoly& P, int k, int n_max);

/// nu(T_j(x/K)) for j = 0..J from nu(x^n), n = 0..J, by an integer recurrence
/// on nu(y^n T_j(y)); J = moments.size() - 1.
std::vector<double> chebyshev_functional(const std::vector<Rational>& moments, const Rational& K);

struct SmoothValue {
    double value = 0.0;
    double error_bound = 0.0;       // truncation_error * growth_envelope + rounding
    double truncation_error = 0.0;
    double growth_envelope = 0.0;   // max |nu_k(T_j)| over the basis computed
    double rounding = 0.0;
    int basis_size = 0;

    Json to_json() const;
};

/// nu_k(chi) = sum_j a_j nu_k(T_j(x/K)). The basis is computed up to twice the
/// series degree when the moment source allows it. Requires K >= crude norm bound.
SmoothValue nu_smooth(ExpansionEnsemble e, const NCPoly& P, const ChebSeries& chi, int k);

struct SupportOptions {
    int p_max = 12;         // free_norm_estimate depth
    int smoothness = 0;     // 0: 2 k_max + 4
    int nodes = kDefaultChebNodes;
};

struct SupportReport {
    ExpansionEnsemble ensemble = ExpansionEnsemble::GUE;
    double epsilon = 0.0;
    int k_max = 0;
    double norm_lower = 0.0;
    double norm_upper = 0.0;
    double vanishing_radius = 0.0;  // chi = 0 on |x| <= this
    double radius = 0.0;            // Chebyshev K
    int series_degree = 0;
    std::vector<SmoothValue> values;
    std::vector<double> tolerances;
    bool pass = false;

    Json to_json() const;
};

/// Test function vanishing on |x| <= (1 + eps/2) upper and equal to 1 beyond
/// (1 + eps) upper, with upper from free_norm_estimate; passes iff every
/// |nu_k(chi)|, k <= k_max, is below its tolerance.
SupportReport support_test(ExpansionEnsemble e, const NCPoly& P, double eps, int k_max,
                           const SupportOptions& opts = {});

enum class DualKind { GSE, Symplectic };

struct DualityRow {
    long N = 0;
    double predicted = 0.0;
    double mc = 0.0;
    double standard_error = 0.0;
    double z = 0.0;
};

struct DualityReport {
    DualKind kind = DualKind::GSE;
    std::vector<DualityRow> rows;

    Json to_json() const;
};

/// Predicted value Phi_h(-1/(2N)) (GOE polynomial) or Psi_h(-1/(2N)) (orthogonal)
/// against Monte Carlo on GSE / Sp(N).
DualityReport duality_report(DualKind kind, const NCPoly& P, const Poly& h, const std::vector<long>& N_list,
                             int replicas, std::uint64_t seed);

/// Phi_h(x) - Phi_h(-x) for GUE, as an exact polynomial (zero when self-dual).
Poly gue_duality_defect(const NCPoly& P, const Poly& h);

enum class TheoremKind { Gauss, Haar };

struct TheoremBound {
    double value = 0.0;
    bool vacuous = false; // value >= 1

    Json to_json() const;
};

/// (N/(c eps)) exp(-c N eps^2), and with the exponent divided by log^2(N eps^2)
/// for Haar. q0 and r are accepted for interface parity; c absorbs their effect.
TheoremBound theorem_bound(TheoremKind kind, long N, double eps, int q0, int r, double c);

} // namespace strongconv
