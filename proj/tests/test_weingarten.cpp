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

#include "doctest.h"

#include "common/error.hpp"
#include "interp/interp.hpp"
#include "weingarten/orthogonal.hpp"
#include "weingarten/psi.hpp"
#include "weingarten/symmetric_group.hpp"
#include "weingarten/weingarten.hpp"

#include <filesystem>
#include <map>
#include <random>

using namespace strongconv;

namespace {

// p(n) by the usual part-size DP
long partition_count(int n)
{
    std::vector<long> p(static_cast<std::size_t>(n + 1), 0);
    p[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int m = k; m <= n; ++m)
            p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
    return p[static_cast<std::size_t>(n)];
}

// size of the conjugacy class with cycle type rho
Integer class_size(const IntPartition& rho)
{
    const int n = partition_size(rho);
    Integer denom = 1;
    std::map<int, int> mult;
    for (int k : rho) {
        denom *= k;
        ++mult[k];
    }
    for (auto [k, m] : mult)
        denom *= factorial(static_cast<unsigned>(m));
    return factorial(static_cast<unsigned>(n)) / denom;
}

Rational q(long a, long b)
{
    Rational r(a, 1);
    r /= b;
    return r;
}

Word random_word(std::mt19937_64& rng, int r, int len)
{
    std::uniform_int_distribution<int> g(1, r), st(0, 1);
    Word w;
    for (int i = 0; i < len; ++i)
        w.push_back({g(rng), st(rng) == 1});
    return w;
}

Word balanced_word(std::mt19937_64& rng, int r, int pairs)
{
    std::uniform_int_distribution<int> g(1, r);
    Word w;
    for (int i = 0; i < pairs; ++i) {
        const int gen = g(rng);
        w.push_back({gen, false});
        w.push_back({gen, true});
    }
    std::shuffle(w.begin(), w.end(), rng);
    return w;
}

NCPoly letter(int r, int g, bool star) { return NCPoly::letter(r, 1, {g, star}); }

// random self-adjoint polynomial with integer coefficients in u, u*
NCPoly random_sa(std::mt19937_64& rng, int r, int maxdeg)
{
    std::uniform_int_distribution<int> c(-2, 2), len(1, maxdeg);
    NCPoly p(r, 1);
    for (int t = 0; t < 2; ++t) {
        const Word w = random_word(rng, r, t == 0 ? maxdeg : len(rng));
        CMatrix a(1);
        a(0, 0) = CRational(Rational(c(rng)), Rational(c(rng)));
        p.add_term(w, a);
        p.add_term(word_adjoint(w, FreeModel::HaarUnitary), a.adjoint());
    }
    return p;
}

} // namespace

TEST_CASE("partitions and dimensions")
{
    CHECK(partitions(0).size() == 1);
    CHECK(partitions(1) == std::vector<IntPartition>{{1}});
    CHECK(partitions(3) == std::vector<IntPartition>{{3}, {2, 1}, {1, 1, 1}});
    CHECK(partitions(5).size() == 7);
    for (int n = 0; n <= 12; ++n)
        CHECK(static_cast<long>(partitions(n).size()) == partition_count(n));
    CHECK(dim_lambda({4}) == 1);
    CHECK(dim_lambda({1, 1, 1, 1}) == 1);
    CHECK(dim_lambda({2, 1}) == 2);
    CHECK(dim_lambda({3, 2}) == 5);
    for (int n = 1; n <= 7; ++n) {
        Integer s = 0;
        for (const auto& l : partitions(n))
            s += dim_lambda(l) * dim_lambda(l);
        CHECK(s == factorial(static_cast<unsigned>(n)));
    }
    CHECK_THROWS_AS(dim_lambda({1, 2}), Error);
}

TEST_CASE("characters")
{
    CHECK(character({2, 1}, {1, 1, 1}) == 2);
    CHECK(character({2, 1}, {2, 1}) == 0);
    CHECK(character({2, 1}, {3}) == -1);
    for (int n = 1; n <= 6; ++n) {
        const auto ps = partitions(n);
        for (const auto& rho : ps) {
            CHECK(character({n}, rho) == 1);
            const int sign = ((n - static_cast<int>(rho.size())) % 2) ? -1 : 1;
            CHECK(character(IntPartition(static_cast<std::size_t>(n), 1), rho) == sign);
        }
        for (const auto& l : ps)
            CHECK(character(l, IntPartition(static_cast<std::size_t>(n), 1)) == dim_lambda(l));
        // row orthogonality
        for (const auto& a : ps)
            for (const auto& b : ps) {
                Integer s = 0;
                for (const auto& rho : ps)
                    s += class_size(rho) * character(a, rho) * character(b, rho);
                CHECK(s == (a == b ? factorial(static_cast<unsigned>(n)) : Integer(0)));
            }
    }
    CHECK_THROWS_AS(character({2, 1}, {2}), Error);
    CHECK(character({2, 1}, {1, 2}) == 0); // unsorted cycle type is accepted
}

TEST_CASE("character cache file round trip")
{
    character({3, 2, 1}, {2, 2, 1, 1});
    const auto file = std::filesystem::temp_directory_path() / "sc_char_cache_test.json";
    save_character_cache(file);
    const auto before = character_cache_size();
    load_character_cache(file);
    CHECK(character_cache_size() == before);
    load_character_cache(std::filesystem::temp_directory_path() / "sc_missing_cache.json");
    std::filesystem::remove(file);
}

TEST_CASE("unitary Weingarten values and Gram oracle")
{
    for (long N = 2; N <= 9; ++N)
        CHECK(wg_unitary({1}, N) == q(1, N));
    for (long N = 3; N <= 9; ++N) {
        CHECK(wg_unitary({1, 1}, N) == q(1, N * N - 1));
        CHECK(wg_unitary({2}, N) == q(-1, N * (N * N - 1)));
    }
    CHECK_THROWS_AS(wg_unitary({1, 1}, 2), Error);
    try {
        wg_unitary({2, 1}, 3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PoleRegion);
    }
    for (int L = 1; L <= 4; ++L)
        for (long N = L + 1; N <= L + 3; ++N) {
            const auto gram = wg_unitary_gram(L, N);
            std::vector<Perm> perms;
            Perm p = identity_perm(L);
            do
                perms.push_back(p);
            while (next_perm(p));
            for (std::size_t i = 0; i < perms.size(); ++i)
                for (std::size_t j = 0; j < perms.size(); ++j)
                    CHECK(gram[i][j] == wg_unitary(cycle_type(compose(inverse(perms[i]), perms[j])), N));
        }
}

TEST_CASE("unitary Weingarten pole structure")
{
    for (int L = 1; L <= 5; ++L) {
        const Poly D = unitary_pole_denominator(L);
        for (const auto& alpha : partitions(L)) {
            const Poly num = wg_unitary_numerator(alpha);
            for (long N = L + 1; N <= L + 4; ++N)
                CHECK(num(Rational(N)) / D(Rational(N)) == wg_unitary(alpha, N));
            // series route against the exact value
            const auto s = wg_unitary_series(alpha, 30);
            CHECK(s[static_cast<std::size_t>(L - 1)] == 0);
            const double x = 1.0 / 200;
            double approx = 0;
            for (int k = 30; k >= 0; --k)
                approx = approx * x + Rational(s[static_cast<std::size_t>(k)]).get_d();
            CHECK(approx == doctest::Approx(wg_unitary(alpha, 200).get_d()).epsilon(1e-12));
        }
    }
}

TEST_CASE("unitary word moments")
{
    CHECK(unitary_word_moment(parse_word("1,1*"), 3) == 1);
    CHECK(unitary_word_moment(parse_word("1"), 5) == 0);
    CHECK(unitary_word_moment(parse_word("1,1,2*"), 5) == 0);
    CHECK(unitary_word_moment({}, 1) == 1);
    for (long N = 5; N <= 9; ++N) {
        // E Tr(U V U* V*) = E|Tr V|^2 / N = 1/N
        CHECK(unitary_word_moment(parse_word("1,2,1*,2*"), N) == q(1, N * N));
    }
    for (long N = 7; N <= 9; ++N)
        CHECK(unitary_word_moment(parse_word("1,2,1*,3,2*,3*"), N) == q(1, N * N));
    CHECK_THROWS_AS(unitary_word_moment(parse_word("1,2,1*,2*"), 4), Error);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        const Word w = balanced_word(rng, 2, 3);
        const long N = 7;
        const Rational m = unitary_word_moment(w, N);
        Word rot = w;
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        CHECK(unitary_word_moment(rot, N) == m);
        Word swapped = w;
        for (auto& l : swapped)
            if (l.gen == 1)
                l.star = !l.star;
        CHECK(unitary_word_moment(swapped, N) == m);
        Word relabel = w;
        for (auto& l : relabel)
            l.gen = 3 - l.gen;
        CHECK(unitary_word_moment(relabel, N) == m);
    }
}

TEST_CASE("unitary word series agrees with exact values")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 8; ++t) {
        const Word w = balanced_word(rng, 2, 3);
        const auto s = unitary_word_series(w, 24);
        const PsiReport rep = reconstruct_word_psi(w, CompactGroup::Unitary);
        CHECK(rep.psi.taylor(24) == s);
    }
}

TEST_CASE("Psi reconstruction for unitary polynomials")
{
    const NCPoly p = letter(1, 1, false) + letter(1, 1, true);
    const PsiReport two = reconstruct_psi(p, Poly({0, 0, 1}), CompactGroup::Unitary);
    for (long N = 3; N <= 40; ++N)
        CHECK(two.psi(q(1, N)) == 2);
    const PsiReport four = reconstruct_psi(p, Poly({0, 0, 0, 0, 1}), CompactGroup::Unitary);
    CHECK(four.L == 4);
    CHECK(four.observed_degree <= four.degree_bound);
    for (long N = 5; N <= 4 + 50; ++N)
        CHECK(four.psi(q(1, N)) == compact_expectation(p, Poly({0, 0, 0, 0, 1}), CompactGroup::Unitary, N));

    // commutator-type polynomial with nontrivial 1/N dependence
    const NCPoly c = ncp_mul(letter(2, 1, false), letter(2, 2, false)) +
                     ncp_mul(letter(2, 2, true), letter(2, 1, true));
    const Poly h({0, 1, 0, 1});
    const PsiReport rc = reconstruct_psi(c, h, CompactGroup::Unitary);
    CHECK(rc.observed_degree <= rc.degree_bound);
    for (long N = rc.L + 1; N <= rc.L + 50; ++N)
        CHECK(rc.psi(q(1, N)) == compact_expectation(c, h, CompactGroup::Unitary, N));

    CHECK_THROWS_AS(reconstruct_psi(letter(1, 1, false), Poly({0, 1}), CompactGroup::Unitary), Error);
}

TEST_CASE("Psi parity on random polynomials")
{
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < 20; ++t) {
        const NCPoly p = random_sa(rng, 2, 2);
        const Poly h({Rational(c(rng)), Rational(c(rng)), Rational(1 + (t % 3))});
        const PsiReport rep = reconstruct_psi(p, h, CompactGroup::Unitary);
        CHECK(rep.observed_degree <= rep.degree_bound);
        for (long N = rep.L + 1; N <= rep.L + 6; ++N)
            CHECK(rep.psi(q(1, N)) == rep.psi(q(-1, N)));
        MESSAGE("observed degree " << rep.observed_degree << " bound " << rep.degree_bound);
    }
}

TEST_CASE("matchings and orthogonal Weingarten")
{
    CHECK(matchings(1).size() == 1);
    CHECK(matchings(2).size() == 3);
    CHECK(matchings(3).size() == 15);
    CHECK(matchings(4).size() == 105);
    for (long N = 2; N <= 6; ++N)
        CHECK(wg_orthogonal(1, N).wg[0][0] == q(1, N));
    for (long N = 4; N <= 9; ++N) {
        const auto w = wg_orthogonal(2, N);
        const Rational den = Rational(N * (N + 2) * (N - 1));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(w.wg[i][j] == (i == j ? Rational(N + 1) / den : Rational(-1) / den));
    }
    CHECK_THROWS_AS(wg_orthogonal(3, 5), Error);
    CHECK_THROWS_AS(wg_orthogonal(5, 20), Error);
    // full inversion against the reduced class system
    for (int L = 1; L <= 4; ++L) {
        const long N = 2 * L + 1;
        const auto full = wg_orthogonal(L, N);
        const auto types = partitions(L);
        const auto by_type = wg_orthogonal_by_type(L, N);
        for (std::size_t i = 0; i < full.matchings.size(); ++i)
            for (std::size_t j = 0; j < full.matchings.size(); ++j) {
                const auto t = coset_type(full.matchings[i], full.matchings[j]);
                const auto k = static_cast<std::size_t>(std::find(types.begin(), types.end(), t) - types.begin());
                CHECK(full.wg[i][j] == by_type[k]);
            }
    }
    for (int L = 1; L <= 3; ++L)
        CHECK(orthogonal_pole_check(L));
}

TEST_CASE("orthogonal Wick identity on entry products")
{
    const long N = 6;
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> idx(0, N - 1);
    for (int L = 1; L <= 3; ++L) {
        const auto ms = matchings(L);
        for (int t = 0; t < 6; ++t) {
            std::vector<int> rows(static_cast<std::size_t>(2 * L));
            for (auto& r : rows)
                r = t % 2 ? idx(rng) % 2 : idx(rng);
            const Matching& m = ms[static_cast<std::size_t>(t) % ms.size()];
            // sum over column tuples constant on the pairs of m: prod (O O^T) entries
            Rational total = 0;
            std::vector<int> vals(static_cast<std::size_t>(L), 0);
            while (true) {
                std::vector<int> cols(static_cast<std::size_t>(2 * L));
                const auto pl = m.pair_list();
                for (std::size_t k = 0; k < pl.size(); ++k) {
                    cols[static_cast<std::size_t>(pl[k].first)] = vals[k];
                    cols[static_cast<std::size_t>(pl[k].second)] = vals[k];
                }
                total += orthogonal_entry_moment(rows, cols, N);
                std::size_t k = 0;
                while (k < vals.size() && ++vals[k] == N)
                    vals[k++] = 0;
                if (k == vals.size())
                    break;
            }
            int expect = 1;
            for (auto [a, b] : m.pair_list())
                if (rows[static_cast<std::size_t>(a)] != rows[static_cast<std::size_t>(b)])
                    expect = 0;
            CHECK(total == expect);
        }
    }
}

TEST_CASE("orthogonal and symplectic word moments")
{
    CHECK(orthogonal_word_moment(parse_word("1"), 4) == 0);
    CHECK(orthogonal_word_moment(parse_word("1,1,1"), 8) == 0);
    CHECK(orthogonal_word_moment(parse_word("1,1*"), 4) == 1);
    for (long N = 4; N <= 9; ++N)
        CHECK(orthogonal_word_moment(parse_word("1,1"), N) == q(1, N));
    CHECK_THROWS_AS(orthogonal_word_moment(parse_word("1,1,1,1"), 7), Error);
    // E Tr(O V O^T V^T) = E (Tr V)^2 / N = 1/N
    for (long N = 8; N <= 10; ++N)
        CHECK(orthogonal_word_moment(parse_word("1,2,1*,2*"), N) == q(1, N * N));

    for (long N = 4; N <= 12; ++N) {
        CHECK(symplectic_expectation(parse_word("1,1*"), N) == 1);
        CHECK(symplectic_expectation(parse_word("1,1"), N) == q(-1, 2 * N));
        CHECK(symplectic_expectation(parse_word("1,2"), N) == 0);
    }
    const PsiReport rep = reconstruct_word_psi(parse_word("1,1,2,2"), CompactGroup::Orthogonal);
    CHECK(rep.observed_degree <= rep.degree_bound);
    for (long N = 10; N <= 20; ++N)
        CHECK(rep.psi(q(1, N)) == orthogonal_word_moment(parse_word("1,1,2,2"), N));
}
