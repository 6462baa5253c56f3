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

#include "interp/interp.hpp"

#include "common/error.hpp"
#include "polycore/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace strongconv {

Json InterpReport::to_json() const
{
    return Json{{"degree", degree}, {"delta", delta},           {"ratio", ratio},
                {"norm", norm},     {"sample_sup", sample_sup}, {"n_samples_used", n_samples_used}};
}

long sample_cap(int q, double delta)
{
    return std::max(10L * std::max(q, 1), static_cast<long>(std::ceil(4.0 / delta)));
}

InterpReport inverse_integer_ratio(const Poly& h, double delta)
{
    require(delta > 0, ErrorCode::Domain, "delta must be positive");
    const int q = h.degree();
    if (q >= 1)
        require(delta * 24.0 * q <= 1.0 + 1e-15, ErrorCode::Domain, "delta must be <= 1/(24 deg h)");

    InterpReport rep;
    rep.degree = std::max(q, 0);
    rep.delta = delta;
    const long n_lo = static_cast<long>(std::ceil(1.0 / (2.0 * delta) - 1e-12));
    const long n_hi = sample_cap(q, delta);
    Rational best = 0;
    for (long n = std::max(n_lo, 1L); n <= n_hi; ++n) {
        Rational v = abs(h(Rational(1, n)));
        if (v > best)
            best = v;
        ++rep.n_samples_used;
    }
    rep.sample_sup = best.get_d();
    rep.norm = sup_norm(h, 0.0, delta);
    if (h.is_zero())
        rep.ratio = 1.0;
    else
        rep.ratio = rep.norm / rep.sample_sup;
    return rep;
}

Poly optimality_example(int q)
{
    require(q >= 1, ErrorCode::Domain, "q must be >= 1");
    Poly out = cheb_poly(ChebKind::First, q).scaled_argument(q);
    for (int j = 1; j <= q; ++j)
        out = out * Poly({Rational(1), Rational(-j)});
    return out;
}

double rakhmanov_ratio(const Poly& h, int M)
{
    require(M >= 1, ErrorCode::Domain, "M must be >= 1");
    require(h.degree() <= M, ErrorCode::Domain, "rakhmanov_ratio needs deg h <= M");
    double best = 0.0;
    for (int k = 1; k <= 2 * M; ++k)
        best = std::max(best, std::abs(h(Rational(-1) + Rational(2 * k - 1, 2 * M)).get_d()));
    const double norm = sup_norm(h, -0.5, 0.5);
    if (h.is_zero())
        return 1.0;
    return norm / best;
}

Poly approx_inverse_shifted_power(int q)
{
    require(q >= 1, ErrorCode::Domain, "q must be >= 1");
    // 2^{-q} sum_k C(q+k-1, k) (-x/2)^k
    std::vector<Rational> c(static_cast<std::size_t>(7 * q) + 1);
    for (int k = 0; k <= 7 * q; ++k) {
        Rational v(binomial(static_cast<unsigned>(q + k - 1), static_cast<unsigned>(k)));
        v /= pow(Rational(2), q + k);
        c[static_cast<std::size_t>(k)] = (k % 2 == 0) ? v : Rational(-v);
    }
    return Poly(std::move(c));
}

Poly gq_poly(int q)
{
    require(q >= 1, ErrorCode::Domain, "q must be >= 1");
    Poly out = Poly::constant(1);
    for (int j = 1; j <= q; ++j) {
        const Poly factor({Rational(1), Rational(0), Rational(-j * j)});
        out = out * factor.pow(static_cast<unsigned>(q / j));
    }
    return out;
}

Poly approx_inverse_gq(int q, int b)
{
    require(q >= 1 && b >= 1, ErrorCode::Domain, "q and b must be >= 1");
    return Poly(series_divide(Poly::constant(1), gq_poly(q), 2 * b * q + 1));
}

Json RationalBernsteinReport::to_json() const
{
    return Json{{"p", p},         {"q", q},       {"m", m},
                {"taylor_coeff", to_fraction_string(taylor_coeff)},
                {"norm_iq", norm_iq}, {"rhs", rhs}, {"kappa", kappa}, {"holds", holds}};
}

RationalBernsteinReport rational_bernstein_check(const Poly& f, int q, int m, double C)
{
    require(q >= 1, ErrorCode::Domain, "q must be >= 1");
    require(m >= 1, ErrorCode::Domain, "m must be >= 1");
    require(f.degree() >= q, ErrorCode::Domain, "rational Bernstein check needs deg f >= q");
    const Poly g = gq_poly(q);
    RationalBernsteinReport rep;
    rep.p = f.degree();
    rep.q = q;
    rep.m = m;
    rep.taylor_coeff = series_divide(f, g, m + 1)[static_cast<std::size_t>(m)];

    const long n_hi = std::max(10L * rep.p, 1000L);
    double norm = std::abs(Rational(f(0) / g(0)).get_d());
    for (long n = q + 1; n <= n_hi; ++n)
        for (long s : {n, -n}) {
            const Rational x(s < 0 ? -1 : 1, std::abs(s));
            norm = std::max(norm, std::abs(Rational(f(x) / g(x)).get_d()));
        }
    rep.norm_iq = norm;
    const double cp = C * rep.p;
    const double mfact = std::tgamma(m + 1.0);
    rep.rhs = (std::exp(-static_cast<double>(rep.p)) * std::pow(cp, m) + std::pow(cp, 2 * m) / mfact) * norm;
    const double coeff = std::abs(rep.taylor_coeff.get_d());
    rep.holds = coeff <= rep.rhs;
    rep.kappa = norm > 0 ? std::pow(coeff * mfact / norm, 1.0 / (2 * m)) / rep.p : 0.0;
    return rep;
}

} // namespace strongconv
