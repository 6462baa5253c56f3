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

#include "sampler/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace strongconv {

using CMat = Eigen::MatrixXcd;

enum class Ensemble { GUE, GOE, GSE, HaarU, HaarO, HaarSp, HayesGUE };

const char* ensemble_name(Ensemble e);
/// gue, goe, gse, haar-u, haar-o, haar-sp, hayes (case-insensitive).
Ensemble parse_ensemble(const std::string& name);
bool is_gaussian(Ensemble e);
/// Size of the sampled complex matrices: N, 2N (GSE, Sp) or N^2 (Hayes).
long matrix_dim(Ensemble e, long N);

/// Self-adjoint Gaussian matrix. GSE is returned in its 2N complex representation.
CMat sample_gaussian(Ensemble kind, long N, Stream& s);

/// Haar unitary, orthogonal, or compact symplectic (2N complex representation).
CMat sample_haar(Ensemble kind, long N, Stream& s);

/// Largest Hayes instance: N^2 * D.
inline constexpr long kHayesDimCap = 4000;

/// G_1 (x) I, ..., G_r (x) I, I (x) G~_1, ..., I (x) G~_r from 2r independent GUE draws.
std::vector<CMat> hayes_sample(int r, long N, std::uint64_t seed, std::uint32_t replica);

/// r matrices (2r for Hayes) for one replica; matrix i uses stream (seed, replica, i).
std::vector<CMat> sample_family(Ensemble e, int r, long N, std::uint64_t seed, std::uint32_t replica);

} // namespace strongconv
