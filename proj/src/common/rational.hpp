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

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace strongconv {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q" or a decimal literal ("0.25", "-1e-3") exactly.
Rational parse_rational(std::string_view text);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// Canonical "numerator/denominator" form (denominator printed even when 1).
std::string to_fraction_string(const Rational& value);

Rational pow(const Rational& base, long exponent);
Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Gaussian rational re + i*im.
struct CRational {
    Rational re;
    Rational im;

    CRational() = default;
    CRational(Rational r) : re(std::move(r)), im(0) {}
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    CRational conj() const { return {re, -im}; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    CRational& operator+=(const CRational& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRational& operator-=(const CRational& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend CRational operator+(CRational a, const CRational& b) { return a += b; }
    friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
    friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
    friend CRational operator*(const CRational& a, const CRational& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRational operator*(const CRational& a, const Rational& s) { return {a.re * s, a.im * s}; }
    friend bool operator==(const CRational& a, const CRational& b) { return a.re == b.re && a.im == b.im; }
};

} // namespace strongconv
