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

#include "weingarten/weingarten.hpp"

#include "common/error.hpp"
#include "common/exact_linalg.hpp"
#include "weingarten/profile.hpp"

#include <algorithm>
#include <map>

namespace strongconv {

using detail::Dsu;
using detail::WordProfile;

Rational wg_unitary(const IntPartition& alpha_type, long N)
{
    const int L = partition_size(alpha_type);
    if (N <= L)
        fail(ErrorCode::PoleRegion, "wg_unitary needs N > L (N=" + std::to_string(N) +
                                        ", L=" + std::to_string(L) + ")");
    Rational sum = 0;
    for (const auto& lambda : partitions(L)) {
        Rational den = 1;
        for (int c : contents(lambda))
            den *= N + c;
        sum += Rational(dim_lambda(lambda) * character(lambda, alpha_type)) / den;
    }
    sum /= Rational(factorial(static_cast<unsigned>(L)));
    sum.canonicalize();
    return sum;
}

std::vector<std::vector<Rational>> wg_unitary_gram(int L, long N)
{
    require(L >= 0 && L <= 7, ErrorCode::SizeCap, "Gram inversion supports L <= 7");
    std::vector<Perm> perms;
    Perm p = identity_perm(L);
    do
        perms.push_back(p);
    while (next_perm(p));
    RationalMatrix g(perms.size(), std::vector<Rational>(perms.size()));
    for (std::size_t i = 0; i < perms.size(); ++i) {
        const Perm si = inverse(perms[i]);
        for (std::size_t j = 0; j < perms.size(); ++j)
            g[i][j] = pow(Rational(N), cycle_count(compose(si, perms[j])));
    }
    auto inv = exact_inverse(std::move(g));
    if (!inv)
        fail(ErrorCode::PoleRegion, "permutation Gram matrix is singular at N=" + std::to_string(N));
    return *inv;
}

Poly unitary_pole_denominator(int L)
{
    require(L >= 0, ErrorCode::Domain, "L must be >= 0");
    Poly d = Poly::monomial(L);
    for (int k = 1; k <= L; ++k) {
        const Poly f({Rational(-k * k), Rational(0), Rational(1)});
        d = d * f.pow(static_cast<unsigned>(L / k));
    }
    return d;
}

namespace {

// Exact division by (N + c); false on a nonzero remainder.
bool divide_linear(Poly& p, int c)
{
    const auto& a = p.coeffs();
    if (a.empty())
        return true;
    const int d = p.degree();
    if (d == 0)
        return false;
    std::vector<Rational> b(static_cast<std::size_t>(d));
    b[static_cast<std::size_t>(d - 1)] = a[static_cast<std::size_t>(d)];
    for (int k = d - 1; k >= 1; --k)
        b[static_cast<std::size_t>(k - 1)] = a[static_cast<std::size_t>(k)] - c * b[static_cast<std::size_t>(k)];
    const Rational rem = a[0] - c * b[0];
    if (sgn(rem) != 0)
        return false;
    p = Poly(std::move(b));
    return true;
}

} // namespace

Poly wg_unitary_numerator(const IntPartition& alpha_type)
{
    const int L = partition_size(alpha_type);
    const Poly D = unitary_pole_denominator(L);
    Poly num;
    for (const auto& lambda : partitions(L)) {
        Poly q = D;
        for (int c : contents(lambda))
            if (!divide_linear(q, c))
                fail(ErrorCode::Inconsistency, "content factor of " + partition_to_string(lambda) +
                                                   " does not divide the pole denominator");
        num += q * Rational(dim_lambda(lambda) * character(lambda, alpha_type));
    }
    return num * (Rational(1) / Rational(factorial(static_cast<unsigned>(L))));
}

std::vector<Rational> wg_unitary_series(const IntPartition& alpha_type, int order)
{
    require(order >= 0, ErrorCode::Domain, "order must be >= 0");
    const int L = partition_size(alpha_type);
    std::vector<Rational> out(static_cast<std::size_t>(order + 1), Rational(0));
    // 1 / prod (N + c) = x^L / prod (1 + c x)
    for (const auto& lambda : partitions(L)) {
        Poly den = Poly::constant(1);
        for (int c : contents(lambda))
            den = den * Poly({Rational(1), Rational(c)});
        const auto s = series_divide(Poly::constant(1), den, order + 1);
        const Rational coef = Rational(dim_lambda(lambda) * character(lambda, alpha_type));
        for (int k = 0; k + L <= order; ++k)
            out[static_cast<std::size_t>(k + L)] += coef * s[static_cast<std::size_t>(k)];
    }
    const Rational scale = Rational(1) / Rational(factorial(static_cast<unsigned>(L)));
    for (auto& v : out) {
        v *= scale;
        v.canonicalize();
    }
    return out;
}

Word compact_canonical_word(const Word& w)
{
    const std::size_t n = w.size();
    if (n == 0)
        return w;
    Word best;
    bool have = false;
    const Word rev(w.rbegin(), w.rend());
    for (const Word* base : std::initializer_list<const Word*>{&w, &rev}) {
        for (std::size_t r = 0; r < n; ++r) {
            Word cand(n);
            std::map<int, std::pair<int, bool>> relabel; // old gen -> (new gen, flip)
            for (std::size_t i = 0; i < n; ++i) {
                const Letter l = (*base)[(i + r) % n];
                auto it = relabel.find(l.gen);
                if (it == relabel.end())
                    it = relabel.emplace(l.gen, std::make_pair(static_cast<int>(relabel.size()) + 1, l.star)).first;
                cand[i] = Letter{it->second.first, l.star != it->second.second};
            }
            if (!have || cand < best) {
                best = std::move(cand);
                have = true;
            }
        }
    }
    return best;
}

std::size_t weingarten_profile_cache_size()
{
    return detail::profile_cache_size();
}

namespace {

std::vector<Perm> all_perms(int L)
{
    std::vector<Perm> out;
    Perm p = identity_perm(L);
    do
        out.push_back(p);
    while (next_perm(p));
    return out;
}

WordProfile build_unitary_profile(const Word& w)
{
    WordProfile prof;
    const int n = static_cast<int>(w.size());
    prof.length = n;
    const int r = max_generator(w);
    // row/col index variables of U and U* entries, per generator
    std::vector<std::vector<int>> ui(static_cast<std::size_t>(r)), uj(ui), vi(ui), vj(ui);
    for (int p = 0; p < n; ++p) {
        const Letter l = w[static_cast<std::size_t>(p)];
        const auto g = static_cast<std::size_t>(l.gen - 1);
        const int next = (p + 1) % n;
        if (!l.star) {
            ui[g].push_back(p);
            uj[g].push_back(next);
        } else {
            vi[g].push_back(next);
            vj[g].push_back(p);
        }
    }
    std::vector<int> sizes;
    std::uint64_t total = 1;
    for (int g = 0; g < r; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        if (ui[gi].size() != vi[gi].size()) {
            prof.vanishes = true;
            return prof;
        }
        const int L = static_cast<int>(ui[gi].size());
        sizes.push_back(L);
        const std::uint64_t f = factorial(static_cast<unsigned>(L)).get_ui();
        if (total > kWeingartenConfigCap / (f * f) + 1)
            fail(ErrorCode::SizeCap, "Weingarten sum for word of length " + std::to_string(n) + " exceeds cap");
        total *= f * f;
    }
    if (total > kWeingartenConfigCap)
        fail(ErrorCode::SizeCap, "Weingarten sum for word of length " + std::to_string(n) + " exceeds cap");
    std::vector<std::vector<Perm>> perms;
    for (int L : sizes)
        perms.push_back(all_perms(L));

    detail::parallel_chunks(
        total,
        [&](std::uint64_t lo, std::uint64_t hi, WordProfile& out) {
            Dsu dsu(n);
            std::vector<IntPartition> types(static_cast<std::size_t>(r));
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                dsu.reset();
                std::uint64_t rest = idx;
                for (int g = 0; g < r; ++g) {
                    const auto gi = static_cast<std::size_t>(g);
                    const auto m = perms[gi].size();
                    const Perm& s = perms[gi][rest % m];
                    rest /= m;
                    const Perm& t = perms[gi][rest % m];
                    rest /= m;
                    for (std::size_t k = 0; k < s.size(); ++k) {
                        dsu.unite(ui[gi][k], vi[gi][static_cast<std::size_t>(s[k])]);
                        dsu.unite(uj[gi][k], vj[gi][static_cast<std::size_t>(t[k])]);
                    }
                    types[gi] = cycle_type(compose(inverse(s), t));
                }
                out.counts[{types, dsu.components()}] += 1;
            }
        },
        prof);
    return prof;
}

std::shared_ptr<const WordProfile> unitary_profile(const Word& w, Word* canonical_out = nullptr)
{
    const Word c = compact_canonical_word(cyclically_reduce(w));
    if (canonical_out)
        *canonical_out = c;
    return detail::cached_profile(detail::ProfileKind::Unitary, c, build_unitary_profile);
}

} // namespace

Rational unitary_word_moment(const Word& w, long N)
{
    if (N <= static_cast<long>(w.size()))
        fail(ErrorCode::PoleRegion, "unitary_word_moment needs N > |w| (N=" + std::to_string(N) +
                                        ", |w|=" + std::to_string(w.size()) + ")");
    const auto prof = unitary_profile(w);
    if (prof->length == 0)
        return 1;
    if (prof->vanishes)
        return 0;
    std::map<IntPartition, Rational> wg;
    Rational sum = 0;
    for (const auto& [key, count] : prof->counts) {
        Rational term = pow(Rational(N), key.second) * Rational(count);
        for (const auto& t : key.first) {
            auto it = wg.find(t);
            if (it == wg.end())
                it = wg.emplace(t, wg_unitary(t, N)).first;
            term *= it->second;
        }
        sum += term;
    }
    sum /= N;
    sum.canonicalize();
    return sum;
}

std::vector<Rational> unitary_word_series(const Word& w, int order)
{
    require(order >= 0, ErrorCode::Domain, "order must be >= 0");
    std::vector<Rational> out(static_cast<std::size_t>(order + 1), Rational(0));
    const auto prof = unitary_profile(w);
    if (prof->length == 0) {
        out[0] = 1;
        return out;
    }
    if (prof->vanishes)
        return out;
    const int n = prof->length;
    const int K = order + n + 1;
    std::map<IntPartition, std::vector<Rational>> wg;
    std::vector<Rational> negative(static_cast<std::size_t>(n + 1), Rational(0));
    for (const auto& [key, count] : prof->counts) {
        std::vector<Rational> prod(static_cast<std::size_t>(K + 1), Rational(0));
        prod[0] = Rational(count);
        for (const auto& t : key.first) {
            auto it = wg.find(t);
            if (it == wg.end())
                it = wg.emplace(t, wg_unitary_series(t, K)).first;
            prod = series_multiply(prod, it->second, K + 1);
        }
        // (1/N) N^comp = x^{1 - comp}
        const int shift = 1 - key.second;
        for (int e = 0; e <= K; ++e) {
            const int fe = e + shift;
            if (fe < 0)
                negative[static_cast<std::size_t>(-fe)] += prod[static_cast<std::size_t>(e)];
            else if (fe <= order)
                out[static_cast<std::size_t>(fe)] += prod[static_cast<std::size_t>(e)];
        }
    }
    for (const auto& v : negative)
        if (sgn(v) != 0)
            fail(ErrorCode::Inconsistency, "Weingarten series has a pole at x = 0");
    for (auto& v : out)
        v.canonicalize();
    return out;
}

} // namespace strongconv
