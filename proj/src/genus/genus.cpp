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

#include "genus/genus.hpp"

#include "common/error.hpp"
#include "ncpoly/free_moments.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace strongconv {

const char* gaussian_name(Gaussian e)
{
    return e == Gaussian::GUE ? "gue" : "goe";
}

Json GenusPoly::to_json() const
{
    return Json{{"ensemble", gaussian_name(ensemble)}, {"poly", poly.to_json()}};
}

namespace {

class RollbackDsu {
public:
    explicit RollbackDsu(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1), comps_(n)
    {
        for (int i = 0; i < n; ++i)
            parent_[static_cast<std::size_t>(i)] = i;
    }

    int components() const { return comps_; }

    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) {
            hist_.push_back({-1, -1});
            return;
        }
        if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)])
            std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
        --comps_;
        hist_.push_back({a, b});
    }

    void rollback()
    {
        const auto [a, b] = hist_.back();
        hist_.pop_back();
        if (a < 0)
            return;
        parent_[static_cast<std::size_t>(b)] = b;
        size_[static_cast<std::size_t>(a)] -= size_[static_cast<std::size_t>(b)];
        ++comps_;
    }

private:
    int find(int x) const
    {
        while (parent_[static_cast<std::size_t>(x)] != x)
            x = parent_[static_cast<std::size_t>(x)];
        return x;
    }

    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<std::pair<int, int>> hist_;
    int comps_;
};

// Index variable a_p sits between letters p-1 and p (cyclically); letter p
// carries the entry X_{a_p a_{p+1}}.
class GluingEnumerator {
public:
    GluingEnumerator(const Word& w, bool twists) : w_(w), len_(static_cast<int>(w.size())), twists_(twists), dsu_(len_)
    {
        counts_.assign(static_cast<std::size_t>(len_ / 2 + 2), 0);
    }

    std::vector<std::uint64_t> run()
    {
        used_.assign(static_cast<std::size_t>(len_), 0);
        recurse();
        return counts_;
    }

private:
    void recurse()
    {
        int i = 0;
        while (i < len_ && used_[static_cast<std::size_t>(i)])
            ++i;
        if (i == len_) {
            counts_[static_cast<std::size_t>(len_ / 2 + 1 - dsu_.components())] += 1;
            return;
        }
        used_[static_cast<std::size_t>(i)] = 1;
        for (int j = i + 1; j < len_; ++j) {
            if (used_[static_cast<std::size_t>(j)] || w_[static_cast<std::size_t>(j)].gen != w_[static_cast<std::size_t>(i)].gen)
                continue;
            used_[static_cast<std::size_t>(j)] = 1;
            // E[X_ab X_cd] contains delta_ad delta_bc
            dsu_.unite(i, (j + 1) % len_);
            dsu_.unite((i + 1) % len_, j);
            recurse();
            dsu_.rollback();
            dsu_.rollback();
            if (twists_) {
                // and for real symmetric entries also delta_ac delta_bd
                dsu_.unite(i, j);
                dsu_.unite((i + 1) % len_, (j + 1) % len_);
                recurse();
                dsu_.rollback();
                dsu_.rollback();
            }
            used_[static_cast<std::size_t>(j)] = 0;
        }
        used_[static_cast<std::size_t>(i)] = 0;
    }

    const Word& w_;
    int len_;
    bool twists_;
    RollbackDsu dsu_;
    std::vector<char> used_;
    std::vector<std::uint64_t> counts_;
};

Word relabel_first_occurrence(const Word& w)
{
    std::map<int, int> lab;
    Word out;
    out.reserve(w.size());
    for (const auto& l : w) {
        auto [it, fresh] = lab.try_emplace(l.gen, static_cast<int>(lab.size()) + 1);
        out.push_back({it->second, false});
    }
    return out;
}

// number of label-matching pairings
long double pairing_count(const Word& w)
{
    std::map<int, int> mult;
    for (const auto& l : w)
        ++mult[l.gen];
    long double c = 1;
    for (const auto& [g, m] : mult) {
        if (m % 2 == 1)
            return 0;
        for (int k = m - 1; k > 1; k -= 2)
            c *= k;
    }
    return c;
}

Poly poly_from_counts(const std::vector<std::uint64_t>& counts)
{
    std::vector<Rational> c(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        c[i] = Rational(Integer(std::to_string(counts[i])));
    return Poly(std::move(c));
}

std::mutex cache_mutex;
std::map<std::pair<int, Word>, Poly> word_cache;

bool single_letter(const Word& w)
{
    for (const auto& l : w)
        if (l.gen != w.front().gen)
            return false;
    return true;
}

Poly harer_zagier_poly(int n)
{
    const auto table = harer_zagier_table(n, n / 2);
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
    for (int g = 0; 2 * g <= n; ++g)
        c[static_cast<std::size_t>(2 * g)] = Rational(table[static_cast<std::size_t>(n)][static_cast<std::size_t>(g)]);
    return Poly(std::move(c));
}

Poly enumerate_word(Gaussian e, const Word& w)
{
    for (const auto& l : w)
        require(!l.star, ErrorCode::Domain, "Gaussian words cannot contain starred letters");
    if (w.empty())
        return Poly::constant(1);
    if (w.size() % 2 == 1 || pairing_count(w) == 0)
        return Poly();
    if (e == Gaussian::GUE && single_letter(w))
        return harer_zagier_poly(static_cast<int>(w.size() / 2));

    const Word c = canonical_trace_word(w);
    const std::pair<int, Word> key{static_cast<int>(e), c};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = word_cache.find(key);
        if (it != word_cache.end())
            return it->second;
    }
    require(c.size() <= kMaxGenusWordLength, ErrorCode::SizeCap,
            "word length " + std::to_string(c.size()) + " exceeds the genus enumeration cap of " +
                std::to_string(kMaxGenusWordLength));
    if (e == Gaussian::GOE) {
        const long double leaves = pairing_count(c) * std::pow(2.0L, static_cast<long double>(c.size() / 2));
        require(leaves <= static_cast<long double>(kGoeLeafBudget), ErrorCode::SizeCap,
                "GOE word needs more than the configured number of gluings");
    }
    Poly p = enumerate_gluings(e, c);
    std::lock_guard<std::mutex> lock(cache_mutex);
    word_cache.emplace(key, p);
    return p;
}

} // namespace

Poly enumerate_gluings(Gaussian e, const Word& w)
{
    require(w.size() <= kMaxGenusWordLength, ErrorCode::SizeCap,
            "word length " + std::to_string(w.size()) + " exceeds the genus enumeration cap of " +
                std::to_string(kMaxGenusWordLength));
    if (w.size() % 2 == 1)
        return Poly();
    if (w.empty())
        return Poly::constant(1);
    GluingEnumerator en(w, e == Gaussian::GOE);
    return poly_from_counts(en.run());
}

Word canonical_trace_word(const Word& w)
{
    Word best;
    bool have = false;
    const std::size_t n = w.size();
    for (int refl = 0; refl < 2; ++refl) {
        Word base = refl ? Word(w.rbegin(), w.rend()) : w;
        for (std::size_t s = 0; s < std::max<std::size_t>(n, 1); ++s) {
            Word rot(n);
            for (std::size_t i = 0; i < n; ++i)
                rot[i] = base[(i + s) % n];
            Word cand = relabel_first_occurrence(rot);
            if (!have || cand < best) {
                best = std::move(cand);
                have = true;
            }
        }
    }
    return best;
}

std::vector<std::vector<Integer>> harer_zagier_table(int n_max, int g_max)
{
    require(n_max >= 0 && g_max >= 0, ErrorCode::Domain, "Harer-Zagier table bounds must be nonnegative");
    std::vector<std::vector<Integer>> eps(static_cast<std::size_t>(n_max) + 1,
                                          std::vector<Integer>(static_cast<std::size_t>(g_max) + 1, 0));
    eps[0][0] = 1;
    for (int n = 1; n <= n_max; ++n)
        for (int g = 0; g <= g_max; ++g) {
            Integer v = Integer(4 * n - 2) * eps[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(g)];
            if (g >= 1 && n >= 2)
                v += Integer(n - 1) * Integer(2 * n - 1) * Integer(2 * n - 3) *
                     eps[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(g - 1)];
            eps[static_cast<std::size_t>(n)][static_cast<std::size_t>(g)] = v / (n + 1);
        }
    return eps;
}

GenusPoly gue_word_polynomial(const Word& w)
{
    return {enumerate_word(Gaussian::GUE, w), Gaussian::GUE};
}

GenusPoly goe_word_polynomial(const Word& w)
{
    return {enumerate_word(Gaussian::GOE, w), Gaussian::GOE};
}

GenusPoly word_polynomial(Gaussian e, const Word& w)
{
    return {enumerate_word(e, w), e};
}

Rational gse_expectation(const Word& w, long N)
{
    require(N >= 1, ErrorCode::Domain, "GSE dimension must be >= 1");
    return goe_word_polynomial(w).poly(Rational(-1, 2 * N));
}

GenusPoly spectral_statistic_poly(Gaussian e, const NCPoly& p, const Poly& h)
{
    require(!p.has_star(), ErrorCode::Domain, "Gaussian statistics need a star-free polynomial");
    require(p.is_self_adjoint(FreeModel::Semicircular), ErrorCode::NotSelfAdjoint, "polynomial is not self-adjoint");
    const NCPoly hp = ncp_apply_poly(h, p);
    // group words by trace class first
    std::map<Word, CRational> grouped;
    for (const auto& [w, b] : hp.terms()) {
        const CRational tr = b.trace();
        if (tr.is_zero())
            continue;
        grouped[w.empty() ? w : canonical_trace_word(w)] += tr;
    }
    std::vector<Rational> re, im;
    for (const auto& [w, tr] : grouped) {
        if (tr.is_zero())
            continue;
        const Poly wp = enumerate_word(e, w);
        if (wp.is_zero())
            continue;
        re.resize(std::max(re.size(), wp.coeffs().size()));
        im.resize(std::max(im.size(), wp.coeffs().size()));
        for (std::size_t i = 0; i < wp.coeffs().size(); ++i) {
            re[i] += tr.re * wp.coeffs()[i];
            im[i] += tr.im * wp.coeffs()[i];
        }
    }
    for (const auto& c : im)
        require(sgn(c) == 0, ErrorCode::Inconsistency, "statistic has a nonzero imaginary coefficient");
    Poly out(std::move(re));
    out *= Rational(1, p.dim());
    return {out, e};
}

Rational nu0_crosscheck(const NCPoly& p, const Poly& h)
{
    const Rational genus0 = spectral_statistic_poly(Gaussian::GUE, p, h).poly.coeff(0);
    const Rational free = free_spectral_moment(p, h, FreeModel::Semicircular);
    require(genus0 == free, ErrorCode::Inconsistency,
            "genus-0 term " + to_fraction_string(genus0) + " differs from the free moment " + to_fraction_string(free));
    return genus0;
}

} // namespace strongconv
