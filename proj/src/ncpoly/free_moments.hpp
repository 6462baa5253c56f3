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

#include <cstddef>

namespace strongconv {

/// Number of noncrossing pairings of the positions of w that pair equal
/// generators. Letters must be unstarred.
Rational free_semicircular_moment(const Word& w);

/// 1 if w reduces to the empty word in the free group, else 0.
Rational free_haar_moment(const Word& w);

/// Free word functional of the given model.
Rational free_word_moment(const Word& w, FreeModel model);

/// (tr_D (x) tau)(P^p), exact. Computed on the full Fock space (semicircular)
/// or the left-regular representation of the free group (Haar).
CRational free_matrix_moment_complex(const NCPoly& p, int power, FreeModel model);
/// Same, but the value must be real.
Rational free_matrix_moment(const NCPoly& p, int power, FreeModel model);

/// Reference path: expand P^p word by word and apply the word functional.
CRational free_matrix_moment_by_expansion(const NCPoly& p, int power, FreeModel model);

/// (tr_D (x) tau)(h(P)).
Rational free_spectral_moment(const NCPoly& p, const Poly& h, FreeModel model);

struct FreeNormOptions {
    std::size_t state_budget = std::size_t(1) << 20;
    std::size_t exact_state_budget = 4000;
};

struct FreeLimit {
    FreeModel model = FreeModel::Semicircular;
    /// exact m_1 .. m_k for the cheap prefix
    std::vector<Rational> moments;
    /// log m_{2t} for t = 1..t_max (floating)
    std::vector<double> log_even_moments;
    int t_max = 0;
    double moment_lower = 0.0;  // max_t m_{2t}^{1/2t}
    double crude_upper = 0.0;   // sum_w ||A_w|| kappa^{|w|}
    double fit_estimate = 0.0;
    double fit_margin = 0.0;
    double fit_residual = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    Json to_json() const;
};

/// Bracket for ||P(s)|| or ||P(u,u*)|| from the even moments up to m_{2 p_max}
/// (fewer if the state budget runs out). P must be self-adjoint.
FreeLimit free_norm_estimate(const NCPoly& p, FreeModel model, int p_max,
                             const FreeNormOptions& opts = {});

} // namespace strongconv
