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

#include "polycore/chebyshev.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace strongconv {

Poly cheb_poly(ChebKind kind, int j)
{
    require(j >= 0, ErrorCode::Domain, "Chebyshev index must be nonnegative");
    Poly prev = Poly::constant(1);
    if (j == 0)
        return prev;
    Poly cur = kind == ChebKind::First ? Poly::x() : Poly::monomial(1, 2);
    const Poly two_x = Poly::monomial(1, 2);
    for (int k = 1; k < j; ++k) {
        Poly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double ChebSeries::operator()(double x) const
{
    const double y = x / radius;
    double b1 = 0.0, b2 = 0.0;
    for (int j = degree(); j >= 1; --j) {
        const double b0 = 2.0 * y * b1 - b2 + coeffs[static_cast<std::size_t>(j)];
        b2 = b1;
        b1 = b0;
    }
    const double a0 = coeffs.empty() ? 0.0 : coeffs[0];
    return y * b1 - b2 + a0;
}

ChebSeries cheb_expand(const std::function<double(double)>& f, double radius, int nodes, double tol)
{
    require(radius > 0, ErrorCode::Domain, "Chebyshev radius must be positive");
    require(nodes >= 64 && (nodes & (nodes - 1)) == 0, ErrorCode::Domain,
            "node count must be a power of two >= 64");
    const std::size_t n = static_cast<std::size_t>(nodes);

    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        const double v = f(radius * std::cos(theta));
        if (!std::isfinite(v))
            fail(ErrorCode::Evaluation, "non-finite function value at x = " +
                                            std::to_string(radius * std::cos(theta)));
        values[k] = v;
    }

    // cos(pi*j*(2k+1)/(2n)) = table[j*(2k+1) mod 4n]
    std::vector<double> table(4 * n);
    for (std::size_t m = 0; m < 4 * n; ++m)
        table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / (2.0 * static_cast<double>(n)));

    std::vector<double> a(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        std::size_t idx = j % (4 * n);
        const std::size_t step = (2 * j) % (4 * n);
        for (std::size_t k = 0; k < n; ++k) {
            s += values[k] * table[idx];
            idx += step;
            if (idx >= 4 * n)
                idx -= 4 * n;
        }
        a[j] = 2.0 * s / static_cast<double>(n);
    }
    a[0] *= 0.5;

    ChebSeries out;
    out.radius = radius;
    const std::size_t keep_limit = n / 2 + 1;
    double dropped = 0.0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j < keep_limit && std::abs(a[j]) >= tol)
            last = j;
        else
            dropped += std::abs(a[j]);
    }
    out.coeffs.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(last + 1));
    for (auto& c : out.coeffs)
        if (std::abs(c) < tol) {
            c = 0.0;
        }
    out.truncation_error = dropped;
    return out;
}

std::vector<Rational> cheb_coeffs_exact(const Poly& h, const Rational& radius)
{
    require(sgn(radius) > 0, ErrorCode::Domain, "Chebyshev radius must be positive");
    // p(y) = h(K y), then Horner in the Chebyshev basis using y T_j = (T_{j+1} + T_{|j-1|})/2.
    const Poly p = h.scaled_argument(radius);
    std::vector<Rational> b;
    const Rational half(1, 2);
    for (int i = p.degree(); i >= 0; --i) {
        std::vector<Rational> next(b.size() + 1);
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (sgn(b[j]) == 0)
                continue;
            if (j == 0) {
                next[1] += b[0];
            } else {
                next[j + 1] += b[j] * half;
                next[j - 1] += b[j] * half;
            }
        }
        next[0] += p.coeff(i);
        b = std::move(next);
    }
    while (!b.empty() && sgn(b.back()) == 0)
        b.pop_back();
    return b;
}

namespace {

double golden_max(const Poly& h, double lo, double hi)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = std::abs(h.eval(x1)), f2 = std::abs(h.eval(x2));
    for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = std::abs(h.eval(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = std::abs(h.eval(x1));
        }
    }
    return std::max(f1, f2);
}

} // namespace

double sup_norm(const Poly& h, double a, double b)
{
    require(a <= b, ErrorCode::Domain, "sup_norm requires a <= b");
    if (h.is_zero())
        return 0.0;
    if (a == b)
        return std::abs(h.eval(a));
    const int q = std::max(h.degree(), 0);
    const int n = 8 * q + 64;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);

    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n) + 2);
    xs.push_back(a);
    for (int k = n - 1; k >= 0; --k)
        xs.push_back(mid + half * std::cos(std::numbers::pi * (k + 0.5) / n));
    xs.push_back(b);
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        vals[i] = std::abs(h.eval(xs[i]));

    double best = *std::max_element(vals.begin(), vals.end());
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1])
            peaks.push_back(i);
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t l, std::size_t r) { return vals[l] > vals[r]; });
    if (peaks.size() > 8)
        peaks.resize(8);
    for (std::size_t i : peaks)
        best = std::max(best, golden_max(h, xs[i - 1], xs[i + 1]));
    return best;
}

double bernstein_rhs(int q, double delta, int m, double x)
{
    require(delta > 0, ErrorCode::Domain, "Bernstein factor needs delta > 0");
    require(m >= 1, ErrorCode::Domain, "Bernstein factor needs m >= 1");
    require(std::abs(x) < delta, ErrorCode::Domain, "Bernstein factor needs |x| < delta");
    const double r = x / delta;
    return std::pow(2.0 * q / (delta * std::sqrt(1.0 - r * r)), m);
}

double extrapolation_bound(const Poly& h, double radius, double x)
{
    require(radius > 0, ErrorCode::Domain, "extrapolation needs K > 0");
    require(std::abs(x) > radius, ErrorCode::Domain, "extrapolation bound needs |x| > K");
    const int q = std::max(h.degree(), 0);
    return std::pow(2.0 * std::abs(x) / radius, q) * sup_norm(h, -radius, radius);
}

FunctionalValue apply_functional(const std::vector<Rational>& basis_values, const ChebSeries& h,
                                 double growth_envelope)
{
    FunctionalValue out;
    for (std::size_t j = 0; j < h.coeffs.size(); ++j) {
        if (h.coeffs[j] == 0.0)
            continue;
        if (j >= basis_values.size())
            fail(ErrorCode::IncompleteBasis,
                 "missing basis value for T_" + std::to_string(j));
        out.value += h.coeffs[j] * basis_values[j].get_d();
    }
    out.error_bound = h.truncation_error * growth_envelope;
    return out;
}

Rational apply_functional_exact(const std::vector<Rational>& basis_values,
                                const std::vector<Rational>& cheb_coeffs)
{
    Rational acc = 0;
    for (std::size_t j = 0; j < cheb_coeffs.size(); ++j) {
        if (sgn(cheb_coeffs[j]) == 0)
            continue;
        if (j >= basis_values.size())
            fail(ErrorCode::IncompleteBasis,
                 "missing basis value for T_" + std::to_string(j));
        acc += cheb_coeffs[j] * basis_values[j];
    }
    return acc;
}

} // namespace strongconv
