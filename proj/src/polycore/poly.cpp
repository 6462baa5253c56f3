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

#include "polycore/poly.hpp"

#include "common/error.hpp"

#include <algorithm>

namespace strongconv {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    normalize();
}

Poly Poly::constant(const Rational& c)
{
    return Poly(std::vector<Rational>{c});
}

Poly Poly::monomial(int degree, const Rational& c)
{
    require(degree >= 0, ErrorCode::Domain, "monomial degree must be nonnegative");
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::normalize()
{
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
        coeffs_.pop_back();
    for (auto& c : coeffs_)
        c.canonicalize();
}

Rational Poly::coeff(int i) const
{
    if (i < 0 || i > degree())
        return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational Poly::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

double Poly::eval(double x) const
{
    long double acc = 0;
    long double lx = x;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * lx + static_cast<long double>(it->get_d());
    return static_cast<double>(acc);
}

Poly Poly::derivative(int order) const
{
    require(order >= 0, ErrorCode::Domain, "derivative order must be nonnegative");
    std::vector<Rational> c = coeffs_;
    for (int k = 0; k < order; ++k) {
        if (c.empty())
            break;
        for (std::size_t i = 1; i < c.size(); ++i)
            c[i - 1] = c[i] * static_cast<long>(i);
        c.pop_back();
    }
    return Poly(std::move(c));
}

Poly Poly::scaled_argument(const Rational& s) const
{
    std::vector<Rational> c = coeffs_;
    Rational p = 1;
    for (auto& ci : c) {
        ci *= p;
        p *= s;
    }
    return Poly(std::move(c));
}

Poly Poly::compose(const Poly& q) const
{
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * q + Poly::constant(*it);
    return acc;
}

Poly Poly::pow(unsigned n) const
{
    Poly result = Poly::constant(1);
    Poly base = *this;
    while (n > 0) {
        if (n & 1u)
            result = result * base;
        n >>= 1u;
        if (n > 0)
            base = base * base;
    }
    return result;
}

bool Poly::is_even() const
{
    for (std::size_t i = 1; i < coeffs_.size(); i += 2)
        if (sgn(coeffs_[i]) != 0)
            return false;
    return true;
}

Poly Poly::truncated(int max_degree) const
{
    if (max_degree < 0)
        return {};
    std::vector<Rational> c(coeffs_.begin(),
                            coeffs_.begin() + std::min<std::ptrdiff_t>(coeffs_.size(), max_degree + 1));
    return Poly(std::move(c));
}

std::vector<double> Poly::to_double() const
{
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_)
        out.push_back(c.get_d());
    return out;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

Poly& Poly::operator*=(const Rational& s)
{
    for (auto& c : coeffs_)
        c *= s;
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(c));
}

Json Poly::to_json() const
{
    Json arr = Json::array();
    for (const auto& c : coeffs_)
        arr.push_back(rational_to_json(c));
    if (coeffs_.empty())
        arr.push_back("0/1");
    return arr;
}

Poly Poly::from_json(const Json& j)
{
    if (!j.is_array())
        fail(ErrorCode::Parse, "polynomial must be a JSON array of coefficients");
    std::vector<Rational> c;
    c.reserve(j.size());
    for (const auto& v : j)
        c.push_back(rational_from_json(v));
    return Poly(std::move(c));
}

std::vector<Rational> series_divide(const Poly& num, const Poly& den, int order)
{
    require(sgn(den.coeff(0)) != 0, ErrorCode::Domain, "series division by a series vanishing at 0");
    std::vector<Rational> out(static_cast<std::size_t>(std::max(order, 0)));
    const Rational inv0 = Rational(1) / den.coeff(0);
    for (int k = 0; k < order; ++k) {
        Rational acc = num.coeff(k);
        for (int j = 1; j <= std::min(k, den.degree()); ++j)
            acc -= den.coeff(j) * out[static_cast<std::size_t>(k - j)];
        out[static_cast<std::size_t>(k)] = acc * inv0;
    }
    return out;
}

std::vector<Rational> series_multiply(const std::vector<Rational>& a,
                                      const std::vector<Rational>& b, int order)
{
    std::vector<Rational> out(static_cast<std::size_t>(std::max(order, 0)));
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) < order; ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) < order; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

Poly newton_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    require(xs.size() == ys.size(), ErrorCode::DimensionMismatch, "interpolation needs matching sizes");
    const std::size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            const Rational dx = xs[i] - xs[i - level];
            require(sgn(dx) != 0, ErrorCode::Domain, "interpolation nodes must be distinct");
            dd[i] = (dd[i] - dd[i - 1]) / dx;
        }
    // nested form dd0 + (x - x0)(dd1 + (x - x1)(...))
    Poly out;
    for (std::size_t k = n; k-- > 0;) {
        out = out * Poly({-xs[k], Rational(1)});
        out += Poly::constant(dd[k]);
    }
    return out;
}

} // namespace strongconv
