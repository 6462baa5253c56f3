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

#include "common/exact_linalg.hpp"

#include "common/error.hpp"

namespace strongconv {

namespace {

// Reduces [a | rhs] in place; false when a is singular.
bool gauss_jordan(RationalMatrix& a, RationalMatrix& rhs)
{
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0)
            ++piv;
        if (piv == n)
            return false;
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        const Rational inv = 1 / a[col][col];
        for (auto& v : a[col])
            v *= inv;
        for (auto& v : rhs[col])
            v *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0)
                continue;
            const Rational f = a[r][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            for (std::size_t c = 0; c < rhs[r].size(); ++c)
                rhs[r][c] -= f * rhs[col][c];
        }
    }
    return true;
}

void check_square(const RationalMatrix& a)
{
    for (const auto& row : a)
        require(row.size() == a.size(), ErrorCode::DimensionMismatch, "matrix must be square");
}

} // namespace

std::optional<RationalMatrix> exact_inverse(RationalMatrix a)
{
    check_square(a);
    const std::size_t n = a.size();
    RationalMatrix id(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        id[i][i] = 1;
    if (!gauss_jordan(a, id))
        return std::nullopt;
    return id;
}

std::optional<std::vector<Rational>> exact_solve(RationalMatrix a, std::vector<Rational> b)
{
    check_square(a);
    require(b.size() == a.size(), ErrorCode::DimensionMismatch, "right-hand side size mismatch");
    RationalMatrix rhs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        rhs[i] = {b[i]};
    if (!gauss_jordan(a, rhs))
        return std::nullopt;
    std::vector<Rational> x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        x[i] = rhs[i][0];
    return x;
}

} // namespace strongconv
