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

#include "common/rational.hpp"

#include "common/error.hpp"

#include <cctype>
#include <cmath>

namespace strongconv {

namespace {

Integer parse_integer(std::string_view text)
{
    if (text.empty())
        fail(ErrorCode::Parse, "empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        fail(ErrorCode::Parse, "bad integer literal '" + std::string(text) + "'");
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            fail(ErrorCode::Parse, "bad integer literal '" + std::string(text) + "'");
    std::string digits(text.substr(start));
    Integer v(digits, 10);
    return text[0] == '-' ? Integer(-v) : v;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        fail(ErrorCode::Parse, "empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0)
            fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    // decimal with optional exponent, parsed exactly
    std::string_view mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mant = text.substr(0, e);
        Integer ex = parse_integer(text.substr(e + 1));
        if (!ex.fits_slong_p() || abs(ex) > 100000)
            fail(ErrorCode::Parse, "exponent out of range in '" + std::string(text) + "'");
        exp10 = ex.get_si();
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mant) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot)
                ++frac_digits;
        } else {
            fail(ErrorCode::Parse, "bad rational literal '" + std::string(text) + "'");
        }
    }
    if (digits.empty())
        fail(ErrorCode::Parse, "bad rational literal '" + std::string(text) + "'");
    Rational r{Integer(digits, 10)};
    long shift = exp10 - frac_digits;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        r *= ten_pow;
    else
        r /= ten_pow;
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

Rational rational_from_double(double value)
{
    if (!std::isfinite(value))
        fail(ErrorCode::Domain, "non-finite value cannot be converted to a rational");
    Rational r(value); // mpq_set_d is exact
    r.canonicalize();
    return r;
}

std::string to_fraction_string(const Rational& value)
{
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow(const Rational& base, long exponent)
{
    if (exponent < 0) {
        if (sgn(base) == 0)
            fail(ErrorCode::Domain, "zero to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace strongconv
