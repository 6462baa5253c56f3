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
#include "sampler/ensembles.hpp"

#include <functional>
#include <vector>

namespace strongconv {

/// sum_w A_w (x) w(matrices); a starred letter is the adjoint.
CMat assemble(const NCPoly& P, const std::vector<CMat>& matrices);

/// max |M - M^*| relative to max(1, max |M|).
double self_adjoint_defect(const CMat& M);

inline constexpr long kDenseEigenCap = 4000;

struct NormOptions {
    long dense_cap = kDenseEigenCap; // dense eigensolver up to this dimension
    int min_iterations = 60;         // Lanczos beyond it
    int max_iterations = 400;
    double tolerance = 1e-6;
};

struct NormResult {
    double norm = 0.0;
    bool iterative = false;
    int iterations = 0;
};

/// Largest |eigenvalue| of a self-adjoint M (defect above 1e-10 throws Domain).
NormResult op_norm(const CMat& M, const NormOptions& opts = {});
/// Convenience wrapper returning only the value.
double op_norm_value(const CMat& M);

/// Dense spectrum, ascending.
Eigen::VectorXd eigenvalues(const CMat& M);

/// Normalized trace of h(M): the mean of h over the eigenvalues.
double trace_stat(const std::function<double(double)>& h, const CMat& M);
double trace_stat(const Poly& h, const CMat& M);

/// tr(w(matrices)) / dim, complex.
std::complex<double> word_trace(const Word& w, const std::vector<CMat>& matrices);

} // namespace strongconv
