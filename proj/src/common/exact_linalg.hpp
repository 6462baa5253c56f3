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

#include "common/rational.hpp"

#include <optional>
#include <vector>

namespace strongconv {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Gauss-Jordan over Q. nullopt when singular.
std::optional<RationalMatrix> exact_inverse(RationalMatrix a);

/// Solves a x = b over Q. nullopt when singular.
std::optional<std::vector<Rational>> exact_solve(RationalMatrix a, std::vector<Rational> b);

} // namespace strongconv
