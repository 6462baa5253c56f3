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

#include <filesystem>
#include <string>
#include <vector>

namespace strongconv {

/// Weakly decreasing positive parts.
using IntPartition = std::vector<int>;
/// Permutation of {0..n-1} in one-line notation.
using Perm = std::vector<int>;

int partition_size(const IntPartition& p);
std::string partition_to_string(const IntPartition& p);

/// All partitions of L, in decreasing lexicographic order: (L), (L-1,1), ...
std::vector<IntPartition> partitions(int L);

/// Hook-length formula.
Integer dim_lambda(const IntPartition& lambda);

/// Contents j - i of the boxes of lambda (row i, column j, zero-based).
std::vector<int> contents(const IntPartition& lambda);

/// chi^lambda at a permutation of cycle type rho (Murnaghan-Nakayama, memoized).
Integer character(const IntPartition& lambda, const IntPartition& rho);

/// Number of memoized character values.
std::size_t character_cache_size();
/// Merges a JSON cache file into the memo table; a missing file is not an error.
void load_character_cache(const std::filesystem::path& file);
void save_character_cache(const std::filesystem::path& file);

Perm identity_perm(int n);
Perm inverse(const Perm& p);
/// (a * b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b);
IntPartition cycle_type(const Perm& p);
int cycle_count(const Perm& p);
/// Advances to the next permutation in lexicographic order; false after the last.
bool next_perm(Perm& p);

} // namespace strongconv
