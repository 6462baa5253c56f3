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

#include "ncpoly/ncpoly.hpp"

#include "common/error.hpp"

#include <cmath>

namespace strongconv {

CMatrix CMatrix::identity(int dim)
{
    return scalar(dim, CRational(1));
}

CMatrix CMatrix::scalar(int dim, const CRational& c)
{
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        m(i, i) = c;
    return m;
}

bool CMatrix::is_zero() const
{
    for (const auto& x : a_)
        if (!x.is_zero())
            return false;
    return true;
}

CRational CMatrix::trace() const
{
    CRational t;
    for (int i = 0; i < dim_; ++i)
        t += (*this)(i, i);
    return t;
}

CMatrix CMatrix::adjoint() const
{
    CMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m(i, j) = (*this)(j, i).conj();
    return m;
}

Eigen::MatrixXcd CMatrix::to_eigen() const
{
    Eigen::MatrixXcd m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m(i, j) = (*this)(i, j).to_complex();
    return m;
}

double CMatrix::op_norm() const
{
    if (dim_ == 0)
        return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen());
    return svd.singularValues()(0);
}

CMatrix& CMatrix::operator+=(const CMatrix& o)
{
    require(dim_ == o.dim_, ErrorCode::DimensionMismatch, "matrix dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i)
        a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(const CRational& s)
{
    for (auto& x : a_)
        x = x * s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b)
{
    require(a.dim_ == b.dim_, ErrorCode::DimensionMismatch, "matrix dimension mismatch");
    CMatrix m(a.dim_);
    for (int i = 0; i < a.dim_; ++i)
        for (int k = 0; k < a.dim_; ++k) {
            const CRational& x = a(i, k);
            if (x.is_zero())
                continue;
            for (int j = 0; j < a.dim_; ++j)
                if (!b(k, j).is_zero())
                    m(i, j) += x * b(k, j);
        }
    return m;
}

Json CMatrix::to_json() const
{
    Json arr = Json::array();
    for (const auto& x : a_)
        arr.push_back(Json::array({to_fraction_string(x.re), to_fraction_string(x.im)}));
    return arr;
}

namespace {

CRational entry_from_json(const Json& e)
{
    if (e.is_array()) {
        if (e.size() != 2)
            fail(ErrorCode::Parse, "matrix entry must be [re, im]");
        return {rational_from_json(e[0]), rational_from_json(e[1])};
    }
    return CRational(rational_from_json(e));
}

} // namespace

CMatrix CMatrix::from_json(const Json& j, int dim)
{
    if (!j.is_array())
        fail(ErrorCode::Parse, "matrix must be a JSON array");
    CMatrix m(dim);
    const std::size_t n = static_cast<std::size_t>(dim) * dim;
    // nested rows: [[[re,im],...],...]
    const bool nested = j.size() == static_cast<std::size_t>(dim) && !j.empty() && j[0].is_array() &&
                        !j[0].empty() && j[0][0].is_array();
    if (nested) {
        for (int r = 0; r < dim; ++r) {
            if (!j[r].is_array() || j[r].size() != static_cast<std::size_t>(dim))
                fail(ErrorCode::Parse, "matrix row has wrong length");
            for (int c = 0; c < dim; ++c)
                m(r, c) = entry_from_json(j[r][c]);
        }
        return m;
    }
    if (j.size() != n)
        fail(ErrorCode::Parse, "matrix must have D*D entries");
    for (std::size_t i = 0; i < n; ++i)
        m(static_cast<int>(i) / dim, static_cast<int>(i) % dim) = entry_from_json(j[i]);
    return m;
}

NCPoly::NCPoly(int r, int dim) : r_(r), dim_(dim)
{
    require(r >= 1, ErrorCode::Domain, "alphabet size must be >= 1");
    require(dim >= 1, ErrorCode::Domain, "coefficient dimension must be >= 1");
}

NCPoly NCPoly::constant(int r, const CMatrix& a)
{
    NCPoly p(r, a.dim());
    p.add_term({}, a);
    return p;
}

NCPoly NCPoly::identity(int r, int dim)
{
    return constant(r, CMatrix::identity(dim));
}

NCPoly NCPoly::letter(int r, int dim, Letter l)
{
    NCPoly p(r, dim);
    p.add_term({l}, CMatrix::identity(dim));
    return p;
}

NCPoly NCPoly::monomial(int r, const Word& w, const CMatrix& a)
{
    NCPoly p(r, a.dim());
    p.add_term(w, a);
    return p;
}

int NCPoly::degree() const
{
    int d = -1;
    for (const auto& [w, a] : terms_)
        d = std::max(d, static_cast<int>(w.size()));
    return d;
}

bool NCPoly::has_star() const
{
    for (const auto& [w, a] : terms_)
        if (strongconv::has_star(w))
            return true;
    return false;
}

void NCPoly::add_term(const Word& w, const CMatrix& a)
{
    require(a.dim() == dim_, ErrorCode::DimensionMismatch, "coefficient dimension mismatch");
    for (const auto& l : w)
        require(l.gen >= 1 && l.gen <= r_, ErrorCode::Domain,
                "generator " + std::to_string(l.gen) + " outside alphabet of size " + std::to_string(r_));
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (!a.is_zero())
            terms_.emplace(w, a);
        return;
    }
    it->second += a;
    if (it->second.is_zero())
        terms_.erase(it);
}

NCPoly NCPoly::adjoint(FreeModel model) const
{
    NCPoly out(r_, dim_);
    for (const auto& [w, a] : terms_)
        out.add_term(word_adjoint(w, model), a.adjoint());
    return out;
}

bool NCPoly::is_self_adjoint(FreeModel model) const
{
    return adjoint(model) == *this;
}

void NCPoly::check_compatible(const NCPoly& o) const
{
    require(r_ == o.r_, ErrorCode::DimensionMismatch, "alphabet size mismatch");
    require(dim_ == o.dim_, ErrorCode::DimensionMismatch, "coefficient dimension mismatch");
}

NCPoly& NCPoly::operator+=(const NCPoly& o)
{
    check_compatible(o);
    for (const auto& [w, a] : o.terms_)
        add_term(w, a);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o)
{
    check_compatible(o);
    for (const auto& [w, a] : o.terms_)
        add_term(w, a * CRational(-1));
    return *this;
}

NCPoly& NCPoly::operator*=(const CRational& s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, a] : terms_)
        a *= s;
    return *this;
}

Json NCPoly::to_json() const
{
    Json terms = Json::array();
    for (const auto& [w, a] : terms_)
        terms.push_back(Json{{"word", word_to_json(w)}, {"matrix", a.to_json()}});
    return Json{{"r", r_}, {"D", dim_}, {"terms", terms}};
}

NCPoly NCPoly::from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("r") || !j.contains("D") || !j.contains("terms"))
        fail(ErrorCode::Parse, "NCPoly JSON needs r, D and terms");
    if (!j["r"].is_number_integer() || !j["D"].is_number_integer() || !j["terms"].is_array())
        fail(ErrorCode::Parse, "NCPoly JSON: r and D must be integers, terms an array");
    const int r = j["r"].get<int>(), dim = j["D"].get<int>();
    if (r < 1 || dim < 1)
        fail(ErrorCode::Parse, "NCPoly JSON: r and D must be >= 1");
    NCPoly p(r, dim);
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("word") || !t.contains("matrix"))
            fail(ErrorCode::Parse, "NCPoly term needs word and matrix");
        const Word w = word_from_json(t["word"]);
        for (const auto& l : w)
            if (l.gen > r)
                fail(ErrorCode::Parse, "generator index exceeds r");
        p.add_term(w, CMatrix::from_json(t["matrix"], dim));
    }
    return p;
}

NCPoly ncp_mul(const NCPoly& p, const NCPoly& q)
{
    require(p.alphabet_size() == q.alphabet_size(), ErrorCode::DimensionMismatch, "alphabet size mismatch");
    require(p.dim() == q.dim(), ErrorCode::DimensionMismatch, "coefficient dimension mismatch");
    NCPoly out(p.alphabet_size(), p.dim());
    for (const auto& [w1, a1] : p.terms())
        for (const auto& [w2, a2] : q.terms()) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            out.add_term(w, a1 * a2);
        }
    return out;
}

NCPoly ncp_pow(const NCPoly& p, int k)
{
    require(k >= 0, ErrorCode::Domain, "negative power");
    NCPoly out = NCPoly::identity(p.alphabet_size(), p.dim());
    for (int i = 0; i < k; ++i)
        out = ncp_mul(out, p);
    return out;
}

NCPoly ncp_apply_poly(const Poly& h, const NCPoly& p)
{
    NCPoly out(p.alphabet_size(), p.dim());
    const CMatrix id = CMatrix::identity(p.dim());
    for (int i = h.degree(); i >= 0; --i) {
        out = ncp_mul(out, p);
        out.add_term({}, id * CRational(h.coeff(i)));
    }
    return out;
}

double crude_norm_bound(const NCPoly& p, double kappa)
{
    double s = 0.0;
    for (const auto& [w, a] : p.terms())
        s += a.op_norm() * std::pow(kappa, static_cast<double>(w.size()));
    return s;
}

} // namespace strongconv
