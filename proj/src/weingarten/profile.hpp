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

// Shared bookkeeping for the unitary and orthogonal Weingarten sums.

#include "common/rational.hpp"
#include "ncpoly/word.hpp"
#include "weingarten/symmetric_group.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <vector>

namespace strongconv::detail {

/// (per-generator class, index components) -> number of configurations.
struct WordProfile {
    bool vanishes = false;
    int length = 0;
    std::map<std::pair<std::vector<IntPartition>, int>, Integer> counts;
};

enum class ProfileKind { Unitary, Orthogonal };

/// Builds on first use, then returns the cached profile of a canonical word.
std::shared_ptr<const WordProfile> cached_profile(ProfileKind kind, const Word& canonical,
                                                  const std::function<WordProfile(const Word&)>& build);

std::size_t profile_cache_size();

/// Splits [0, total) into contiguous chunks, one per worker; chunk results
/// are merged in order so the outcome does not depend on scheduling.
void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t, std::uint64_t, WordProfile&)>& work,
                     WordProfile& out);

class Dsu {
public:
    explicit Dsu(int n) : parent_(static_cast<std::size_t>(n)) { reset(); }
    void reset()
    {
        std::iota(parent_.begin(), parent_.end(), 0);
        components_ = static_cast<int>(parent_.size());
    }
    int find(int x)
    {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            auto& p = parent_[static_cast<std::size_t>(x)];
            p = parent_[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[static_cast<std::size_t>(a)] = b;
            --components_;
        }
    }
    int components() const { return components_; }

private:
    std::vector<int> parent_;
    int components_ = 0;
};

} // namespace strongconv::detail
