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
#include "expansion/expansion.hpp"
#include "genus/genus.hpp"
#include "ncpoly/free_moments.hpp"
#include "polycore/chebyshev.hpp"
#include "polycore/test_function.hpp"

#include <cmath>
#include <random>

using namespace strongconv;

namespace {

NCPoly random_sa(std::mt19937_64& rng, int r, int dim, int maxdeg)
{
    std::uniform_int_distribution<int> d(-3, 3), g(1, r), len(0, maxdeg);
    NCPoly p(r, dim);
    for (int t = 0; t < 3; ++t) {
        Word w;
        const int n = t == 0 ? maxdeg : len(rng);
        for (int i = 0; i < n; ++i)
            w.push_back({g(rng), false});
        CMatrix a(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                a(i, j) = CRational(Rational(d(rng)), Rational(d(rng)));
        p.add_term(w, a);
        p.add_term(word_adjoint(w, FreeModel::Semicircular), a.adjoint());
    }
    return p;
}

NCPoly u_plus_ustar()
{
    return NCPoly::letter(1, 1, {1, false}) + NCPoly::letter(1, 1, {1, true});
}

// int f dsigma on [-2,2], composite Simpson in theta (x = 2 cos theta)
double semicircle_integral(const std::function<double(double)>& f)
{
    const int n = 4000;
    const double pi = std::acos(-1.0);
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double th = pi * i / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double sn = std::sin(th);
        s += w * f(2.0 * std::cos(th)) * 2.0 * sn * sn / pi;
    }
    return s * (pi / n) / 3.0;
}

} // namespace

TEST_CASE("expansion: small closed forms")
{
    const NCPoly x1 = NCPoly::letter(1, 1, {1, false});
    const auto gue = nu_coeffs(ExpansionEnsemble::GUE, x1, Poly::monomial(4), 3);
    CHECK(gue.coeffs == std::vector<Rational>{2, 0, 1});
    const auto goe = nu_coeffs(ExpansionEnsemble::GOE, x1, Poly::monomial(2), 2);
    CHECK(goe.coeffs == std::vector<Rational>{1, 1});
    const auto hu = mu_coeffs(u_plus_ustar(), Poly::monomial(2), 3);
    CHECK(hu.coeffs == std::vector<Rational>{2, 0, 0});
    CHECK(parse_expansion_ensemble("Haar-U") == ExpansionEnsemble::HaarU);
    CHECK_THROWS_AS(parse_expansion_ensemble("cue"), Error);
    CHECK_THROWS_AS(nu_coeffs(ExpansionEnsemble::HaarU, x1, Poly::x(), 1), Error);
    CHECK(gue.to_json()["coeffs"][2] == "1/1");
}

TEST_CASE("expansion: nu_1 vanishes and nu_0 is the free moment")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 12; ++t) {
        const NCPoly p = random_sa(rng, 2, 1 + t % 3, 1 + t % 2);
        std::vector<Rational> hc;
        for (int i = 0; i <= 3; ++i)
            hc.push_back(Rational(static_cast<long>(rng() % 7) - 3));
        const Poly h(hc);
        const auto r = nu_coeffs(ExpansionEnsemble::GUE, p, h, 2);
        CHECK(sgn(r.coeffs[1]) == 0);
        CHECK(r.coeffs[0] == free_spectral_moment(p, h, FreeModel::Semicircular));
    }
}

TEST_CASE("expansion: single-letter closed forms match the engines")
{
    const NCPoly x1 = NCPoly::letter(1, 1, {1, false});
    // 3/2 x + 1/3
    NCPoly p = x1 * CRational(Rational(3, 2));
    p += NCPoly::identity(1, 1) * CRational(Rational(1, 3));
    REQUIRE(single_letter_form(p, ExpansionEnsemble::GUE).has_value());
    CHECK_FALSE(single_letter_form(p, ExpansionEnsemble::HaarU).has_value());
    CHECK_FALSE(single_letter_form(ncp_mul(x1, x1), ExpansionEnsemble::GUE).has_value());
    for (int k = 0; k <= 4; ++k) {
        const auto closed = monomial_functional(ExpansionEnsemble::GUE, p, k, 8);
        for (int n = 0; n <= 8; ++n)
            CHECK(closed[static_cast<std::size_t>(n)] ==
                  nu_coeffs(ExpansionEnsemble::GUE, p, Poly::monomial(n), k + 1).coeffs[static_cast<std::size_t>(k)]);
    }
    const NCPoly u = u_plus_ustar();
    for (int k = 0; k <= 2; ++k) {
        const auto closed = monomial_functional(ExpansionEnsemble::HaarU, u, k, 6);
        for (int n = 0; n <= 6; ++n)
            CHECK(closed[static_cast<std::size_t>(n)] ==
                  mu_coeffs(u, Poly::monomial(n), k + 1).coeffs[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("expansion: Chebyshev basis values")
{
    // semicircle moments: nu_0(T_j(x/2)) is 1, 0, -1/2, 0, 0, ... (U_j orthogonality)
    const NCPoly x1 = NCPoly::letter(1, 1, {1, false});
    const auto m = monomial_functional(ExpansionEnsemble::GUE, x1, 0, 20);
    const auto b = chebyshev_functional(m, Rational(2));
    REQUIRE(b.size() == 21);
    CHECK(b[0] == doctest::Approx(1.0));
    CHECK(b[2] == doctest::Approx(-0.5));
    for (std::size_t j = 3; j < b.size(); ++j)
        CHECK(std::abs(b[j]) < 1e-14);
    // against the exact Chebyshev coefficients of a polynomial
    const Poly h({1, -2, 0, 3, 1});
    const auto a = cheb_coeffs_exact(h, Rational(3));
    const auto b3 = chebyshev_functional(m, Rational(3));
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += a[j].get_d() * b3[j];
    CHECK(s == doctest::Approx(free_spectral_moment(x1, h, FreeModel::Semicircular).get_d()).epsilon(1e-12));
}

TEST_CASE("expansion: nu_smooth on polynomials and constants")
{
    const NCPoly x1 = NCPoly::letter(1, 1, {1, false});
    const Poly h({1, -2, 0, 3, 1});
    const ChebSeries s = cheb_expand([&](double x) { return h.eval(x); }, 3.0, 64, 1e-18);
    for (int k = 0; k <= 4; ++k) {
        const SmoothValue v = nu_smooth(ExpansionEnsemble::GUE, x1, s, k);
        const double exact = nu_coeffs(ExpansionEnsemble::GUE, x1, h, k + 1).values[static_cast<std::size_t>(k)];
        CHECK(std::abs(v.value - exact) < 1e-10);
        CHECK(std::abs(v.value - exact) <= v.error_bound + 1e-12);
    }
    const ChebSeries one = cheb_expand([](double) { return 1.0; }, 3.0, 64, 1e-18);
    CHECK(nu_smooth(ExpansionEnsemble::GUE, x1, one, 0).value == doctest::Approx(1.0));
    CHECK(std::abs(nu_smooth(ExpansionEnsemble::GUE, x1, one, 2).value) < 1e-14);
    // radius below the crude bound is refused
    CHECK_THROWS_AS(nu_smooth(ExpansionEnsemble::GUE, x1, cheb_expand([](double) { return 1.0; }, 1.0, 64, 1e-18), 0),
                    Error);
}

TEST_CASE("expansion: support property and negative control")
{
    const NCPoly x1 = NCPoly::letter(1, 1, {1, false});
    const SupportReport rep = support_test(ExpansionEnsemble::GUE, x1, 0.1, 3, {});
    MESSAGE(rep.to_json().dump());
    CHECK(rep.pass);
    CHECK(rep.vanishing_radius >= 2.0);
    CHECK(rep.values.size() == 4);

    const SupportReport hu = support_test(ExpansionEnsemble::HaarU, u_plus_ustar(), 0.1, 2, {});
    MESSAGE(hu.to_json().dump());
    CHECK(hu.pass);

    // bump supported in [-1, 1]
    auto bump = [](double x) { return std::abs(x) < 1.0 ? std::pow(1.0 - x * x, 8) : 0.0; };
    const ChebSeries s = cheb_expand(bump, 3.0, 512, 1e-16);
    const SmoothValue v0 = nu_smooth(ExpansionEnsemble::GUE, x1, s, 0);
    const double oracle = semicircle_integral(bump);
    CHECK(std::abs(v0.value) > 10 * v0.error_bound);
    CHECK(v0.value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("expansion: GUE duality defect and theorem bounds")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        const NCPoly p = random_sa(rng, 2, 1 + t % 2, 2);
        CHECK(gue_duality_defect(p, Poly({0, 1, 1, 1})).is_zero());
    }
    const auto a = theorem_bound(TheoremKind::Gauss, 100, 0.5, 1, 1, 1.0);
    const auto b = theorem_bound(TheoremKind::Gauss, 400, 0.5, 1, 1, 1.0);
    CHECK(b.value < a.value);
    CHECK_FALSE(b.vacuous);
    CHECK(theorem_bound(TheoremKind::Gauss, 10, 0.1, 1, 1, 1.0).vacuous);
    CHECK(theorem_bound(TheoremKind::Haar, 1000, 0.5, 1, 1, 1.0).value <
          theorem_bound(TheoremKind::Haar, 200, 0.5, 1, 1, 1.0).value);
    CHECK_THROWS_AS(theorem_bound(TheoremKind::Gauss, 10, 1.5, 1, 1, 1.0), Error);
    CHECK_THROWS_AS(theorem_bound(TheoremKind::Gauss, 10, 0.5, 1, 1, 0.0), Error);
}

TEST_CASE("expansion: GSE duality by Monte Carlo")
{
    const NCPoly x1 = NCPoly::letter(2, 1, {1, false});
    const NCPoly x2 = NCPoly::letter(2, 1, {2, false});
    const NCPoly p = ncp_mul(x1, x2) + ncp_mul(x2, x1);
    const DualityReport rep = duality_report(DualKind::GSE, p, Poly::monomial(2), {6, 10}, 4000, 77);
    for (const auto& row : rep.rows)
        CHECK(std::abs(row.z) < 4.0);
    const NCPoly u = u_plus_ustar();
    const DualityReport sp = duality_report(DualKind::Symplectic, u, Poly::monomial(4), {8}, 4000, 78);
    CHECK(std::abs(sp.rows[0].z) < 4.0);
}
