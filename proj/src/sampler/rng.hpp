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

#include <array>
#include <cstdint>

namespace strongconv {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based stream keyed by (seed, replica, matrix index). Two streams
/// with different keys never share a block.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint32_t replica, std::uint32_t matrix_index);

    std::uint32_t next_u32();
    /// Uniform on (0, 1), 53 random bits.
    double uniform();
    /// Standard normal (Box-Muller, both outputs used).
    double normal();

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t replica_;
    std::uint32_t matrix_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace strongconv
