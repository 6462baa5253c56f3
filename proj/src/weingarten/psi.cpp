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

#include "weingarten/psi.hpp"

#include "common/error.hpp"
#include "interp/interp.hpp"
#include "weingarten/orthogonal.hpp"
#include "weingarten/weingarten.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace strongconv {

Rational RationalFn::operator()(const Rational& x) const
{
    const Rational d = den(x);
    if (sgn(d) == 0)
        fail(ErrorCode::PoleRegion, "rational function evaluated at a pole");
    Rational v = num(x) / d;
    v.canonicalize();
    return v;
}

double RationalFn::eval(double x) const
{
    return num.eval(x) / den.eval(x);
}

std::vector<Rational> RationalFn::taylor(int order) const
{
    require(order >= 0, ErrorCode::Domain, "order must be >= 0");
    return series_divide(num, den, order + 1);
}

Json RationalFn::to_json() const
{
    return Json{{"num", num.to_json()}, {"den", den.to_json()}};
}

RationalFn RationalFn::from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        fail(ErrorCode::Parse, "rational function needs num and den");
    RationalFn f{Poly::from_json(j.at("num")), Poly::from_json(j.at("den"))};
    require(!f.den.is_zero(), ErrorCode::Domain, "denominator must be nonzero");
    return f;
}

const char* compact_group_name(CompactGroup g)
{
    return g == CompactGroup::Unitary ? "unitary" : "orthogonal";
}

Json PsiReport::to_json() const
{
    return Json{{"group", compact_group_name(group)},
                {"q", q},
                {"q0", q0},
                {"L", L},
                {"degree_bound", degree_bound},
                {"observed_degree", observed_degree},
                {"sample_N", Json::array({sample_N.front(), sample_N.back()})},
                {"heldout_N", heldout_N},
                {"psi", psi.to_json()}};
}

int psi_degree_bound(CompactGroup g, int L)
{
    require(L >= 1, ErrorCode::Domain, "L must be >= 1");
    const double c = g == CompactGroup::Unitary ? 3.0 : 6.0;
    return static_cast<int>(std::floor(c * L * (1.0 + std::log(static_cast<double>(L)))));
}

namespace {

Rational word_moment(const Word& w, CompactGroup g, long N)
{
    return g == CompactGroup::Unitary ? unitary_word_moment(w, N)
                                      : detail::orthogonal_word_moment_unchecked(w, N);
}

Rational expectation_of(const NCPoly& H, CompactGroup g, long N)
{
    Rational re = 0, im = 0;
    for (const auto& [w, B] : H.terms()) {
        const CRational t = B.trace();
        if (t.is_zero())
            continue;
        const Rational m = word_moment(w, g, N);
        re += t.re * m;
        im += t.im * m;
    }
    if (sgn(im) != 0)
        fail(ErrorCode::Inconsistency, "expectation has a nonzero imaginary part");
    re /= H.dim();
    re.canonicalize();
    return re;
}

PsiReport reconstruct(const std::function<Rational(long)>& value, CompactGroup g, int L, int q, int q0)
{
    PsiReport rep;
    rep.group = g;
    rep.q = q;
    rep.q0 = q0;
    rep.L = L;
    rep.degree_bound = psi_degree_bound(g, L);
    const Poly den = gq_poly(L);
    std::vector<Rational> xs, ys;
    for (long N = L + 1; N <= L + 1 + rep.degree_bound; ++N) {
        const Rational x(1, N);
        rep.sample_N.push_back(N);
        xs.push_back(x);
        ys.push_back(value(N) * den(x));
    }
    rep.psi = RationalFn{newton_interpolate(xs, ys), den};
    for (long N = L + 2 + rep.degree_bound; N <= L + 4 + rep.degree_bound; ++N) {
        rep.heldout_N.push_back(N);
        if (rep.psi(Rational(1, N)) != value(N))
            fail(ErrorCode::Inconsistency, "degree bound violated: held-out mismatch at N=" + std::to_string(N));
    }
    rep.observed_degree = std::max(0, rep.psi.num.degree());
    return rep;
}

} // namespace

Rational compact_expectation(const NCPoly& P, const Poly& h, CompactGroup g, long N)
{
    if (!P.is_self_adjoint(FreeModel::HaarUnitary))
        fail(ErrorCode::NotSelfAdjoint, "P must be self-adjoint");
    return expectation_of(ncp_apply_poly(h, P), g, N);
}

PsiReport reconstruct_psi(const NCPoly& P, const Poly& h, CompactGroup g)
{
    if (!P.is_self_adjoint(FreeModel::HaarUnitary))
        fail(ErrorCode::NotSelfAdjoint, "P must be self-adjoint");
    const NCPoly H = ncp_apply_poly(h, P);
    const int q = std::max(0, h.degree());
    const int q0 = P.degree();
    const int L = std::max(1, q * q0);
    PsiReport rep = reconstruct([&](long N) { return expectation_of(H, g, N); }, g, L, q, q0);
    if (g == CompactGroup::Unitary && !rep.psi.num.is_even())
        fail(ErrorCode::Inconsistency, "reconstructed Psi is not even");
    return rep;
}

PsiReport reconstruct_word_psi(const Word& w, CompactGroup g)
{
    const int L = std::max<int>(1, static_cast<int>(w.size()));
    return reconstruct([&](long N) { return word_moment(w, g, N); }, g, L, 1, static_cast<int>(w.size()));
}

Rational symplectic_expectation(const Word& w, long N)
{
    if (N < 2 * static_cast<long>(w.size()))
        fail(ErrorCode::PoleRegion, "symplectic_expectation needs N >= 2|w|");
    static std::mutex mu;
    static std::map<Word, RationalFn> cache;
    const Word c = compact_canonical_word(cyclically_reduce(w));
    RationalFn psi;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(c);
        if (it != cache.end())
            psi = it->second;
    }
    if (psi.den.is_zero()) {
        psi = reconstruct_word_psi(c, CompactGroup::Orthogonal).psi;
        std::lock_guard lock(mu);
        cache.emplace(c, psi);
    }
    return psi(Rational(-1, 2 * N));
}

Rational symplectic_spectral(const NCPoly& P, const Poly& h, long N)
{
    const int L = std::max(1, std::max(0, h.degree()) * P.degree());
    if (2 * N <= L)
        fail(ErrorCode::PoleRegion, "symplectic_spectral needs 2N > q q0");
    return reconstruct_psi(P, h, CompactGroup::Orthogonal).psi(Rational(-1, 2 * N));
}

} // namespace strongconv
