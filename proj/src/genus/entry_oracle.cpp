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

#include "common/error.hpp"
#include "genus/genus.hpp"

#include <map>

namespace strongconv {

namespace {

// X^{(g)}_{ab} = sum_k c_k xi_k with independent real xi_k ~ N(0, v_k).
struct Component {
    long coord;
    int phase; // multiplies by i^phase
};

struct EntryModel {
    Gaussian e;
    int N;

    long coord_id(int g, int a, int b, int part) const
    {
        return ((static_cast<long>(g) * N + a) * N + b) * 2 + part;
    }

    // variance of a coordinate, as numerator over N
    Rational variance(int a, int b) const
    {
        if (e == Gaussian::GUE)
            return a == b ? Rational(1, N) : Rational(1, 2 * N);
        return a == b ? Rational(2, N) : Rational(1, N);
    }

    std::vector<Component> components(int g, int a, int b) const
    {
        if (a == b)
            return {{coord_id(g, a, a, 0), 0}};
        const int lo = std::min(a, b), hi = std::max(a, b);
        if (e == Gaussian::GOE)
            return {{coord_id(g, lo, hi, 0), 0}};
        // (xi + i eta) above the diagonal, (xi - i eta) below
        return {{coord_id(g, lo, hi, 0), 0}, {coord_id(g, lo, hi, 1), a < b ? 1 : 3}};
    }
};

Rational gaussian_moment(const Rational& var, int m)
{
    if (m % 2 == 1)
        return 0;
    Rational r = 1;
    for (int k = m - 1; k > 1; k -= 2)
        r *= k;
    return r * pow(var, m / 2);
}

CRational i_power(int p)
{
    switch (p & 3) {
    case 0:
        return CRational(1);
    case 1:
        return CRational(0, 1);
    case 2:
        return CRational(-1);
    default:
        return CRational(0, -1);
    }
}

} // namespace

Rational entry_level_expectation(Gaussian e, const Word& w, int N)
{
    require(N >= 1, ErrorCode::Domain, "dimension must be >= 1");
    for (const auto& l : w)
        require(!l.star, ErrorCode::Domain, "Gaussian words cannot contain starred letters");
    const int k = static_cast<int>(w.size());
    if (k == 0)
        return 1;
    require(k <= 10, ErrorCode::SizeCap, "entry-level oracle is limited to words of length <= 10");
    const EntryModel model{e, N};

    CRational total;
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<Component>> comps(static_cast<std::size_t>(k));
    std::vector<Rational> vars(static_cast<std::size_t>(k));
    for (;;) {
        for (int p = 0; p < k; ++p) {
            const int a = idx[static_cast<std::size_t>(p)], b = idx[static_cast<std::size_t>((p + 1) % k)];
            comps[static_cast<std::size_t>(p)] = model.components(w[static_cast<std::size_t>(p)].gen, a, b);
            vars[static_cast<std::size_t>(p)] = model.variance(a, b);
        }
        // expand the product over the component choices
        std::vector<int> choice(static_cast<std::size_t>(k), 0);
        for (;;) {
            std::map<long, std::pair<int, Rational>> mult;
            int phase = 0;
            for (int p = 0; p < k; ++p) {
                const Component& c = comps[static_cast<std::size_t>(p)][static_cast<std::size_t>(choice[static_cast<std::size_t>(p)])];
                phase += c.phase;
                auto& slot = mult[c.coord];
                slot.first += 1;
                slot.second = vars[static_cast<std::size_t>(p)];
            }
            Rational prod = 1;
            for (const auto& [coord, mv] : mult) {
                prod *= gaussian_moment(mv.second, mv.first);
                if (sgn(prod) == 0)
                    break;
            }
            if (sgn(prod) != 0)
                total += i_power(phase) * prod;
            int p = 0;
            while (p < k) {
                if (++choice[static_cast<std::size_t>(p)] < static_cast<int>(comps[static_cast<std::size_t>(p)].size()))
                    break;
                choice[static_cast<std::size_t>(p)] = 0;
                ++p;
            }
            if (p == k)
                break;
        }
        int p = 0;
        while (p < k) {
            if (++idx[static_cast<std::size_t>(p)] < N)
                break;
            idx[static_cast<std::size_t>(p)] = 0;
            ++p;
        }
        if (p == k)
            break;
    }
    require(sgn(total.im) == 0, ErrorCode::Inconsistency, "entry-level expectation is not real");
    return total.re / N;
}

} // namespace strongconv
