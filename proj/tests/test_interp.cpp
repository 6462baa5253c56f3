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
#include "polycore/chebyshev.hpp"

#include <cmath>
#include <random>

using namespace strongconv;

namespace {

// random h = sum c_j T_j(x/delta - 1), so h lives naturally on [0, 2 delta]
Poly random_cheb_poly(std::mt19937_64& rng, int q, const Rational& delta)
{
    std::uniform_int_distribution<int> d(-1000, 1000);
    const Poly shift = Poly({Rational(-1), 1 / delta});
    Poly h;
    for (int j = 0; j <= q; ++j)
        h += cheb_poly(ChebKind::First, j).compose(shift) * Rational(d(rng), 1000);
    return h;
}

double grid_max_abs(const std::function<double(double)>& f, double a, double b, int n)
{
    double best = 0.0;
    for (int i = 0; i <= n; ++i)
        best = std::max(best, std::abs(f(a + (b - a) * i / n)));
    return best;
}

} // namespace

TEST_CASE("inverse_integer_ratio")
{
    auto r1 = inverse_integer_ratio(Poly::constant(1), 0.1);
    CHECK(r1.ratio == doctest::Approx(1.0));
    auto rx = inverse_integer_ratio(Poly::x(), 1.0 / 48);
    CHECK(rx.ratio <= 1 + 1e-9);
    CHECK(rx.norm == doctest::Approx(1.0 / 48));
    CHECK(rx.sample_sup == doctest::Approx(1.0 / 24));
    CHECK(rx.n_samples_used == static_cast<int>(sample_cap(1, 1.0 / 48) - 24 + 1));
    CHECK_THROWS_AS(inverse_integer_ratio(Poly::x().pow(10), 1.0 / 200), Error);
    CHECK_THROWS_AS(inverse_integer_ratio(Poly::x(), 0.0), Error);

    std::mt19937_64 rng(17);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const Poly h = random_cheb_poly(rng, 10, Rational(1, 240));
        auto rep = inverse_integer_ratio(h, 1.0 / 240);
        CHECK(std::isfinite(rep.ratio));
        worst = std::max(worst, rep.ratio);
    }
    MESSAGE("max ratio q=10: " << worst);
    CHECK(worst <= 100.0);
}

TEST_CASE("inverse_integer_ratio uniformly bounded")
{
    std::mt19937_64 rng(19);
    for (int q : {5, 10, 20}) {
        const Rational delta(1, 24 * q);
        double worst = 0.0;
        const int trials = 500;
        for (int t = 0; t < trials; ++t)
            worst = std::max(worst, inverse_integer_ratio(random_cheb_poly(rng, q, delta), delta.get_d()).ratio);
        MESSAGE("q=" << q << " max ratio " << worst);
        CHECK(worst <= 100.0);
    }
}

TEST_CASE("optimality_example")
{
    CHECK(optimality_example(1) == Poly({0, 1, -1}));
    for (int q = 1; q <= 16; ++q) {
        const Poly h = optimality_example(q);
        CHECK(h.degree() == 2 * q);
        for (int N = 1; N <= 10 * q; ++N)
            CHECK(abs(h(Rational(1, N))) <= 1);
    }
    // on [0, alpha/q] with alpha <= 1 both factors are bounded by 1 and h_q(0) = T_q(0)
    for (double alpha : {0.5, 1.0})
        for (int q = 2; q <= 16; q += 2)
            CHECK(sup_norm(optimality_example(q), 0, alpha / q) == doctest::Approx(1.0).epsilon(1e-10));
    // geometric growth sets in from alpha = 3
    for (int q = 2; q <= 16; q += 2)
        CHECK(sup_norm(optimality_example(q), 0, 3.0 / q) >= std::pow(2.0, q));
    const double r = sup_norm(optimality_example(8), 0, 3.0 / 8) / sup_norm(optimality_example(4), 0, 3.0 / 4);
    CHECK(r >= 2.0);
}

TEST_CASE("rakhmanov_ratio")
{
    CHECK(rakhmanov_ratio(Poly::constant(1), 3) == doctest::Approx(1.0));
    CHECK(rakhmanov_ratio(Poly::x(), 4) <= 1.0);
    CHECK_THROWS_AS(rakhmanov_ratio(Poly::x().pow(5), 4), Error);
    std::mt19937_64 rng(23);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int q = 2 + t % 12;
        const double r = rakhmanov_ratio(random_cheb_poly(rng, q, Rational(1)), q);
        CHECK(std::isfinite(r));
        worst = std::max(worst, r);
    }
    MESSAGE("max Rakhmanov ratio " << worst);
}

TEST_CASE("approx_inverse_shifted_power")
{
    for (int q : {1, 2, 3, 4}) {
        const Poly t = approx_inverse_shifted_power(q);
        CHECK(t.degree() <= 7 * q);
        const auto r = [q](double x) { return std::pow(2.0 + x, -q); };
        const double err = grid_max_abs([&](double x) { return r(x) - t.eval(x); }, -1, 1, 1000);
        CHECK(err <= std::pow(4.0, -q));
        for (int i = 0; i <= 1000; ++i) {
            const double x = -1 + 2.0 * i / 1000;
            CHECK(4.0 / 7.0 * std::abs(t.eval(x)) <= std::abs(r(x)));
            CHECK(std::abs(r(x)) <= 4.0 * std::abs(t.eval(x)));
        }
    }
}

TEST_CASE("gq_poly")
{
    CHECK(gq_poly(1) == Poly({1, 0, -1}));
    CHECK(gq_poly(2) == Poly({1, 0, -1}).pow(2) * Poly({1, 0, -4}));
    for (int q = 1; q <= 12; ++q) {
        int s = 0;
        for (int j = 1; j <= q; ++j)
            s += q / j;
        CHECK(gq_poly(q).degree() == 2 * s);
        CHECK(gq_poly(q).is_even());
    }
}

TEST_CASE("approx_inverse_gq")
{
    CHECK(approx_inverse_gq(3, 2).coeff(0) == 1);
    for (int q = 1; q <= 6; ++q)
        for (int b = 1; b <= 3; ++b) {
            const Poly s = approx_inverse_gq(q, b);
            const Poly g = gq_poly(q);
            CHECK(s.degree() <= 2 * b * q);
            const double a = 1.0 / (8 * q);
            const double err = grid_max_abs([&](double x) { return 1.0 / g.eval(x) - s.eval(x); }, -a, a, 1024);
            CHECK(err <= std::pow(2.0, -b * q));
            if (b == 2)
                for (int i = 0; i <= 1024; ++i) {
                    const double x = -a + 2 * a * i / 1024;
                    const double inv = 1.0 / g.eval(x);
                    CHECK(0.5 * inv <= s.eval(x));
                    CHECK(s.eval(x) <= 1.5 * inv);
                }
        }
    // series division check: s * g = 1 + O(x^{2bq+1})
    for (int q = 1; q <= 6; ++q) {
        const Poly prod = approx_inverse_gq(q, 2) * gq_poly(q);
        CHECK(prod.coeff(0) == 1);
        for (int k = 1; k <= 4 * q; ++k)
            CHECK(prod.coeff(k) == 0);
    }
}

TEST_CASE("rational_bernstein_check")
{
    for (int q : {1, 3}) {
        const Poly g = gq_poly(q);
        for (int m = 1; m <= 4; ++m) {
            CHECK(rational_bernstein_check(g, q, m).taylor_coeff == 0);
            auto rep = rational_bernstein_check(Poly::x() * g, q, m);
            CHECK(rep.taylor_coeff == (m == 1 ? 1 : 0));
        }
    }
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> d(-100, 100);
    double kappa = 0.0;
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> c(13);
        for (auto& x : c)
            x = Rational(d(rng), 100);
        c.back() = 1;
        const Poly f(c);
        for (int m = 1; m <= 6; ++m) {
            auto rep = rational_bernstein_check(f, 3, m);
            // exact: coefficient of (s f) with s the truncated inverse matches through degree 2bq
            const Poly sf = approx_inverse_gq(3, 2) * f;
            CHECK(rep.taylor_coeff == sf.coeff(m));
            kappa = std::max(kappa, rep.kappa);
            CHECK(rep.holds);
        }
    }
    MESSAGE("max kappa " << kappa);
    CHECK_THROWS_AS(rational_bernstein_check(Poly::x(), 3, 1), Error);
}
