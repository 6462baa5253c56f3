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

#include "weingarten/orthogonal.hpp"

#include "common/error.hpp"
#include "common/exact_linalg.hpp"
#include "weingarten/profile.hpp"
#include "weingarten/weingarten.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace strongconv {

using detail::Dsu;
using detail::WordProfile;

std::vector<std::pair<int, int>> Matching::pair_list() const
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < partner.size(); ++i)
        if (static_cast<int>(i) < partner[i])
            out.emplace_back(static_cast<int>(i), partner[i]);
    return out;
}

namespace {

void gen_matchings(std::vector<int>& partner, std::vector<Matching>& out)
{
    auto first = std::find(partner.begin(), partner.end(), -1);
    if (first == partner.end()) {
        out.push_back(Matching{partner});
        return;
    }
    const int a = static_cast<int>(first - partner.begin());
    for (int b = a + 1; b < static_cast<int>(partner.size()); ++b) {
        if (partner[static_cast<std::size_t>(b)] != -1)
            continue;
        partner[static_cast<std::size_t>(a)] = b;
        partner[static_cast<std::size_t>(b)] = a;
        gen_matchings(partner, out);
        partner[static_cast<std::size_t>(a)] = -1;
        partner[static_cast<std::size_t>(b)] = -1;
    }
}

Matching standard_matching(int L)
{
    Matching m{std::vector<int>(static_cast<std::size_t>(2 * L))};
    for (int i = 0; i < L; ++i) {
        m.partner[static_cast<std::size_t>(2 * i)] = 2 * i + 1;
        m.partner[static_cast<std::size_t>(2 * i + 1)] = 2 * i;
    }
    return m;
}

// A matching whose coset type against standard_matching is mu.
Matching representative(const IntPartition& mu)
{
    const int L = partition_size(mu);
    Matching m{std::vector<int>(static_cast<std::size_t>(2 * L))};
    int o = 0;
    for (int k : mu) {
        for (int i = 0; i < k; ++i) {
            const int a = o + 2 * i + 1;
            const int b = (i == k - 1) ? o : o + 2 * i + 2;
            m.partner[static_cast<std::size_t>(a)] = b;
            m.partner[static_cast<std::size_t>(b)] = a;
        }
        o += 2 * k;
    }
    return m;
}

} // namespace

std::vector<Matching> matchings(int L)
{
    require(L >= 0, ErrorCode::Domain, "L must be >= 0");
    require(L <= 7, ErrorCode::SizeCap, "matching enumeration supports L <= 7");
    std::vector<int> partner(static_cast<std::size_t>(2 * L), -1);
    std::vector<Matching> out;
    gen_matchings(partner, out);
    return out;
}

IntPartition coset_type(const Matching& m1, const Matching& m2)
{
    require(m1.partner.size() == m2.partner.size(), ErrorCode::DimensionMismatch, "matching sizes differ");
    std::vector<char> seen(m1.partner.size(), 0);
    IntPartition t;
    for (std::size_t s = 0; s < seen.size(); ++s) {
        if (seen[s])
            continue;
        int len = 0;
        std::size_t x = s;
        do {
            seen[x] = 1;
            const auto y = static_cast<std::size_t>(m1.partner[x]);
            seen[y] = 1;
            len += 2;
            x = static_cast<std::size_t>(m2.partner[y]);
        } while (x != s);
        t.push_back(len / 2);
    }
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
}

int loop_count(const Matching& m1, const Matching& m2)
{
    return static_cast<int>(coset_type(m1, m2).size());
}

Json OrthogonalWeingarten::to_json() const
{
    Json ms = Json::array();
    for (const auto& m : matchings) {
        Json pl = Json::array();
        for (auto [a, b] : m.pair_list())
            pl.push_back(Json::array({a, b}));
        ms.push_back(pl);
    }
    Json rows = Json::array();
    for (const auto& row : wg) {
        Json r = Json::array();
        for (const auto& v : row)
            r.push_back(to_fraction_string(v));
        rows.push_back(r);
    }
    return Json{{"L", L}, {"N", N}, {"matchings", ms}, {"wg", rows}};
}

OrthogonalWeingarten wg_orthogonal(int L, long N)
{
    require(L >= 0, ErrorCode::Domain, "L must be >= 0");
    require(L <= kMaxOrthogonalL, ErrorCode::SizeCap, "wg_orthogonal supports L <= 4");
    if (N < 2 * L)
        fail(ErrorCode::PoleRegion, "wg_orthogonal needs N >= 2L");
    OrthogonalWeingarten out;
    out.L = L;
    out.N = N;
    out.matchings = matchings(L);
    const std::size_t m = out.matchings.size();
    RationalMatrix g(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            g[i][j] = pow(Rational(N), loop_count(out.matchings[i], out.matchings[j]));
            g[j][i] = g[i][j];
        }
    auto inv = exact_inverse(std::move(g));
    if (!inv)
        fail(ErrorCode::PoleRegion, "matching Gram matrix is singular at N=" + std::to_string(N));
    out.wg = std::move(*inv);
    return out;
}

namespace {

// counts[mu][nu][loops]: number of m2 with type(m2, m0) = nu and loops(m1_mu, m2) = loops.
struct ClassSystem {
    std::vector<IntPartition> types;
    std::vector<std::vector<std::vector<long>>> counts;
};

const ClassSystem& class_system(int L)
{
    static std::mutex mu;
    static std::map<int, ClassSystem> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(L);
    if (it != cache.end())
        return it->second;
    ClassSystem cs;
    cs.types = partitions(L);
    const std::size_t p = cs.types.size();
    std::map<IntPartition, std::size_t> index;
    for (std::size_t i = 0; i < p; ++i)
        index[cs.types[i]] = i;
    const Matching m0 = standard_matching(L);
    const auto all = matchings(L);
    std::vector<std::size_t> nu_of(all.size());
    for (std::size_t j = 0; j < all.size(); ++j)
        nu_of[j] = index.at(coset_type(all[j], m0));
    cs.counts.assign(p, std::vector<std::vector<long>>(p, std::vector<long>(static_cast<std::size_t>(L + 1), 0)));
    for (std::size_t a = 0; a < p; ++a) {
        const Matching m1 = representative(cs.types[a]);
        for (std::size_t j = 0; j < all.size(); ++j)
            ++cs.counts[a][nu_of[j]][static_cast<std::size_t>(loop_count(m1, all[j]))];
    }
    return cache.emplace(L, std::move(cs)).first->second;
}

} // namespace

std::vector<Rational> wg_orthogonal_by_type(int L, long N)
{
    require(L >= 0, ErrorCode::Domain, "L must be >= 0");
    if (L == 0)
        return {Rational(1)};
    if (N < L)
        fail(ErrorCode::PoleRegion, "orthogonal Weingarten needs N >= L");
    static std::mutex mu;
    static std::map<std::pair<int, long>, std::vector<Rational>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({L, N});
        if (it != cache.end())
            return it->second;
    }
    const ClassSystem& cs = class_system(L);
    const std::size_t p = cs.types.size();
    RationalMatrix a(p, std::vector<Rational>(p, Rational(0)));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < cs.counts[i][j].size(); ++k)
                if (cs.counts[i][j][k])
                    a[i][j] += Rational(cs.counts[i][j][k]) * pow(Rational(N), static_cast<long>(k));
    std::vector<Rational> rhs(p, Rational(0));
    rhs[p - 1] = 1; // (1^L), the identity coset
    auto w = exact_solve(std::move(a), std::move(rhs));
    if (!w)
        fail(ErrorCode::PoleRegion, "orthogonal class system is singular at N=" + std::to_string(N));
    for (auto& v : *w)
        v.canonicalize();
    std::lock_guard lock(mu);
    cache.emplace(std::make_pair(L, N), *w);
    return *w;
}

Poly orthogonal_pole_denominator(int L)
{
    require(L >= 0, ErrorCode::Domain, "L must be >= 0");
    Poly d = Poly::monomial(L);
    for (int k = 1; k <= 2 * L; ++k) {
        const Poly f({Rational(-k * k), Rational(0), Rational(1)});
        d = d * f.pow(static_cast<unsigned>(2 * L / k));
    }
    return d;
}

bool orthogonal_pole_check(int L)
{
    require(L >= 1 && L <= kMaxOrthogonalL, ErrorCode::SizeCap, "pole check supports 1 <= L <= 4");
    const Poly D = orthogonal_pole_denominator(L);
    const int d = D.degree();
    const long n0 = 2 * L + 1;
    const std::size_t p = partitions(L).size();
    for (std::size_t t = 0; t < p; ++t) {
        std::vector<Rational> xs, ys;
        for (long N = n0; N <= n0 + d; ++N) {
            xs.emplace_back(N);
            ys.push_back(D(Rational(N)) * wg_orthogonal_by_type(L, N)[t]);
        }
        const Poly num = newton_interpolate(xs, ys);
        for (long N = n0 + d + 1; N <= n0 + d + 3; ++N)
            if (num(Rational(N)) != D(Rational(N)) * wg_orthogonal_by_type(L, N)[t])
                return false;
    }
    return true;
}

Rational orthogonal_entry_moment(const std::vector<int>& rows, const std::vector<int>& cols, long N)
{
    require(rows.size() == cols.size(), ErrorCode::DimensionMismatch, "row and column index counts differ");
    for (std::size_t k = 0; k < rows.size(); ++k)
        require(rows[k] >= 0 && rows[k] < N && cols[k] >= 0 && cols[k] < N, ErrorCode::Domain,
                "entry index out of range");
    if (rows.size() % 2)
        return 0;
    const int L = static_cast<int>(rows.size()) / 2;
    require(L <= kMaxOrthogonalL, ErrorCode::SizeCap, "entry moments support at most 8 entries");
    const auto w = wg_orthogonal_by_type(L, N);
    const auto types = partitions(L);
    std::map<IntPartition, std::size_t> index;
    for (std::size_t i = 0; i < types.size(); ++i)
        index[types[i]] = i;
    const auto all = matchings(L);
    auto respects = [](const Matching& m, const std::vector<int>& idx) {
        for (auto [a, b] : m.pair_list())
            if (idx[static_cast<std::size_t>(a)] != idx[static_cast<std::size_t>(b)])
                return false;
        return true;
    };
    Rational sum = 0;
    for (const auto& m1 : all) {
        if (!respects(m1, rows))
            continue;
        for (const auto& m2 : all)
            if (respects(m2, cols))
                sum += w[index.at(coset_type(m1, m2))];
    }
    sum.canonicalize();
    return sum;
}

namespace {

WordProfile build_orthogonal_profile(const Word& w)
{
    WordProfile prof;
    const int n = static_cast<int>(w.size());
    prof.length = n;
    const int r = max_generator(w);
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(r)), cols(rows);
    for (int p = 0; p < n; ++p) {
        const Letter l = w[static_cast<std::size_t>(p)];
        const auto g = static_cast<std::size_t>(l.gen - 1);
        const int next = (p + 1) % n;
        rows[g].push_back(l.star ? next : p);
        cols[g].push_back(l.star ? p : next);
    }
    std::vector<std::vector<Matching>> ms;
    std::uint64_t total = 1;
    for (int g = 0; g < r; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        if (rows[gi].size() % 2) {
            prof.vanishes = true;
            return prof;
        }
        const int L = static_cast<int>(rows[gi].size()) / 2;
        if (L > kMaxOrthogonalL)
            fail(ErrorCode::SizeCap, "orthogonal word moments allow at most 8 letters per generator");
        ms.push_back(matchings(L));
        const std::uint64_t f = ms.back().size();
        total *= f * f;
        if (total > kWeingartenConfigCap)
            fail(ErrorCode::SizeCap, "Weingarten sum for word of length " + std::to_string(n) + " exceeds cap");
    }
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
                    const auto m = ms[gi].size();
                    const Matching& m1 = ms[gi][rest % m];
                    rest /= m;
                    const Matching& m2 = ms[gi][rest % m];
                    rest /= m;
                    for (auto [a, b] : m1.pair_list())
                        dsu.unite(rows[gi][static_cast<std::size_t>(a)], rows[gi][static_cast<std::size_t>(b)]);
                    for (auto [a, b] : m2.pair_list())
                        dsu.unite(cols[gi][static_cast<std::size_t>(a)], cols[gi][static_cast<std::size_t>(b)]);
                    types[gi] = coset_type(m1, m2);
                }
                out.counts[{types, dsu.components()}] += 1;
            }
        },
        prof);
    return prof;
}

} // namespace

Rational detail::orthogonal_word_moment_unchecked(const Word& w, long N)
{
    const Word c = compact_canonical_word(cyclically_reduce(w));
    const auto prof = detail::cached_profile(detail::ProfileKind::Orthogonal, c, build_orthogonal_profile);
    if (prof->length == 0)
        return 1;
    if (prof->vanishes)
        return 0;
    std::map<int, std::map<IntPartition, Rational>> wg;
    Rational sum = 0;
    for (const auto& [key, count] : prof->counts) {
        Rational term = pow(Rational(N), key.second) * Rational(count);
        for (const auto& t : key.first) {
            const int L = partition_size(t);
            auto& table = wg[L];
            if (table.empty()) {
                const auto types = partitions(L);
                const auto vals = wg_orthogonal_by_type(L, N);
                for (std::size_t i = 0; i < types.size(); ++i)
                    table[types[i]] = vals[i];
            }
            term *= table.at(t);
        }
        sum += term;
    }
    sum /= N;
    sum.canonicalize();
    return sum;
}

Rational orthogonal_word_moment(const Word& w, long N)
{
    if (N < 2 * static_cast<long>(w.size()))
        fail(ErrorCode::PoleRegion, "orthogonal_word_moment needs N >= 2|w| (N=" + std::to_string(N) +
                                        ", |w|=" + std::to_string(w.size()) + ")");
    return detail::orthogonal_word_moment_unchecked(w, N);
}

} // namespace strongconv
