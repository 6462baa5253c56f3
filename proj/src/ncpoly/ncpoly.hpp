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

#include "ncpoly/word.hpp"
#include "polycore/poly.hpp"

#include <Eigen/Dense>

#include <map>

namespace strongconv {

/// Dense D x D matrix of Gaussian rationals, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

    static CMatrix identity(int dim);
    static CMatrix scalar(int dim, const CRational& c);

    int dim() const { return dim_; }
    CRational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const CRational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    bool is_zero() const;
    CRational trace() const;
    CMatrix adjoint() const;
    Eigen::MatrixXcd to_eigen() const;
    /// Largest singular value (floating point).
    double op_norm() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator*=(const CRational& s);
    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator*(CMatrix a, const CRational& s) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend bool operator==(const CMatrix& a, const CMatrix& b) { return a.dim_ == b.dim_ && a.a_ == b.a_; }

    /// Flat row-major list of [re, im] pairs.
    Json to_json() const;
    /// Accepts the flat list or a nested D x D list of pairs; bare numbers are real.
    static CMatrix from_json(const Json& j, int dim);

private:
    int dim_ = 0;
    std::vector<CRational> a_;
};

/// Noncommutative polynomial with D x D matrix coefficients in r letters and
/// their adjoints. Terms with zero coefficient are never stored.
class NCPoly {
public:
    using TermMap = std::map<Word, CMatrix, WordLess>;

    NCPoly() = default;
    NCPoly(int r, int dim);

    static NCPoly constant(int r, const CMatrix& a);
    static NCPoly identity(int r, int dim);
    static NCPoly letter(int r, int dim, Letter l);
    static NCPoly monomial(int r, const Word& w, const CMatrix& a);

    int alphabet_size() const { return r_; }
    int dim() const { return dim_; }
    int degree() const;
    const TermMap& terms() const { return terms_; }
    bool has_star() const;

    /// Adds a * w; drops the term if it cancels.
    void add_term(const Word& w, const CMatrix& a);

    NCPoly adjoint(FreeModel model) const;
    bool is_self_adjoint(FreeModel model) const;

    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    NCPoly& operator*=(const CRational& s);
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(NCPoly a, const CRational& s) { return a *= s; }
    friend bool operator==(const NCPoly& a, const NCPoly& b)
    {
        return a.r_ == b.r_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    /// {r, D, terms: [{word: [[gen, star], ...], matrix: [[re, im], ...]}]}
    Json to_json() const;
    static NCPoly from_json(const Json& j);

private:
    void check_compatible(const NCPoly& o) const;

    int r_ = 1;
    int dim_ = 1;
    TermMap terms_;
};

/// Word-concatenation product with matrix products.
NCPoly ncp_mul(const NCPoly& p, const NCPoly& q);
NCPoly ncp_pow(const NCPoly& p, int k);
/// h(P) by Horner; the constant term sits on the empty word.
NCPoly ncp_apply_poly(const Poly& h, const NCPoly& p);

/// Sum over terms of ||A_w|| kappa^{|w|}.
double crude_norm_bound(const NCPoly& p, double kappa);

} // namespace strongconv
