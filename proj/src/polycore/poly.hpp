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

#pragma once

#include "common/json_io.hpp"
#include "common/rational.hpp"

#include <vector>

namespace strongconv {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
/// The stored coefficient list never has a trailing zero; the zero polynomial
/// has an empty list and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);

    static Poly constant(const Rational& c);
    static Poly monomial(int degree, const Rational& c = 1);
    static Poly x() { return monomial(1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    /// Coefficient of x^i; zero for i outside [0, degree].
    Rational coeff(int i) const;

    Rational operator()(const Rational& x) const;
    /// Horner evaluation in extended precision.
    double eval(double x) const;

    Poly derivative(int order = 1) const;
    /// p(s*x).
    Poly scaled_argument(const Rational& s) const;
    /// p(q(x)).
    Poly compose(const Poly& q) const;
    Poly pow(unsigned n) const;

    /// All odd-degree coefficients vanish.
    bool is_even() const;
    Poly truncated(int max_degree) const;

    std::vector<double> to_double() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) { return a * Rational(-1); }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// JSON array of "numerator/denominator" strings, lowest degree first.
    Json to_json() const;
    static Poly from_json(const Json& j);

private:
    void normalize();

    std::vector<Rational> coeffs_;
};

/// First `order` Taylor coefficients at 0 of num/den; requires den(0) != 0.
std::vector<Rational> series_divide(const Poly& num, const Poly& den, int order);

/// Product of truncated power series (both lowest degree first), kept to `order` terms.
std::vector<Rational> series_multiply(const std::vector<Rational>& a,
                                      const std::vector<Rational>& b, int order);

/// Unique polynomial of degree < xs.size() through (xs[i], ys[i]); Newton divided differences.
Poly newton_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

} // namespace strongconv
