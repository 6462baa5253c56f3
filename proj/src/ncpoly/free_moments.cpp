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

#include "ncpoly/free_moments.hpp"

#include "common/error.hpp"

#include <Eigen/QR>

#include <cmath>
#include <complex>
#include <unordered_map>

namespace strongconv {

Rational free_semicircular_moment(const Word& w)
{
    for (const auto& l : w)
        require(!l.star, ErrorCode::Domain, "semicircular words cannot contain starred letters");
    const std::size_t n = w.size();
    if (n % 2 == 1)
        return 0;
    // nc[i][j]: pairings of the interval [i, j)
    std::vector<std::vector<Integer>> nc(n + 1, std::vector<Integer>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i)
        nc[i][i] = 1;
    for (std::size_t len = 2; len <= n; len += 2)
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            Integer s = 0;
            for (std::size_t k = i + 1; k < j; k += 2)
                if (w[k].gen == w[i].gen)
                    s += nc[i + 1][k] * nc[k + 1][j];
            nc[i][j] = s;
        }
    return Rational(nc[0][n]);
}

Rational free_haar_moment(const Word& w)
{
    return reduce_unitary(w).empty() ? 1 : 0;
}

Rational free_word_moment(const Word& w, FreeModel model)
{
    return model == FreeModel::Semicircular ? free_semicircular_moment(w) : free_haar_moment(w);
}

namespace {

// Basis vector of the Fock space (semicircular) or a reduced group word (Haar),
// stored as base-A digits with the first letter least significant.
struct FockKey {
    unsigned __int128 code = 0;
    int len = 0;
    bool operator==(const FockKey& o) const { return len == o.len && code == o.code; }
};

struct FockKeyHash {
    std::size_t operator()(const FockKey& k) const
    {
        const auto lo = static_cast<std::uint64_t>(k.code);
        const auto hi = static_cast<std::uint64_t>(k.code >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
        h ^= static_cast<std::uint64_t>(k.len) * 0xD6E8FEB86659FD93ULL;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

template <class S>
using Block = std::vector<S>;

template <class S>
using FockState = std::unordered_map<FockKey, Block<S>, FockKeyHash>;


inline CRational conj_of(const CRational& x) { return x.conj(); }
inline std::complex<double> conj_of(const std::complex<double>& x) { return std::conj(x); }
inline CRational from_crational(const CRational& x, CRational*) { return x; }
inline std::complex<double> from_crational(const CRational& x, std::complex<double>*) { return x.to_complex(); }
inline bool is_zero_scalar(const CRational& x) { return x.is_zero(); }
inline bool is_zero_scalar(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }

template <class S>
class FockEngine {
public:
    FockEngine(const NCPoly& p, FreeModel model) : model_(model), dim_(p.dim())
    {
        if (model == FreeModel::Semicircular)
            require(!p.has_star(), ErrorCode::Domain, "starred letter in a semicircular polynomial");
        alphabet_ = model == FreeModel::Semicircular ? p.alphabet_size() : 2 * p.alphabet_size();
        // largest length with A^len < 2^128
        max_len_ = 0;
        if (alphabet_ == 1) {
            max_len_ = 1 << 30;
        } else {
            unsigned __int128 v = 1;
            const unsigned __int128 limit = ~static_cast<unsigned __int128>(0) / static_cast<unsigned>(alphabet_);
            while (v <= limit) {
                v *= static_cast<unsigned>(alphabet_);
                ++max_len_;
            }
        }
        degree_ = std::max(p.degree(), 0);
        for (const auto& [w, a] : p.terms()) {
            Term t;
            for (const auto& l : w)
                t.letters.push_back(code_of(l));
            t.coeff.resize(static_cast<std::size_t>(dim_) * dim_);
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    t.coeff[static_cast<std::size_t>(i) * dim_ + j] = from_crational(a(i, j), static_cast<S*>(nullptr));
            terms_.push_back(std::move(t));
        }
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }

    FockState<S> vacuum() const
    {
        FockState<S> st;
        Block<S> id(static_cast<std::size_t>(dim_) * dim_, S{});
        for (int i = 0; i < dim_; ++i)
            id[static_cast<std::size_t>(i) * dim_ + i] = one();
        st.emplace(FockKey{}, std::move(id));
        return st;
    }

    // P applied to the state; keys longer than keep_len are discarded.
    FockState<S> apply(const FockState<S>& in, int keep_len) const
    {
        FockState<S> out;
        std::vector<FockKey> cur, next;
        const std::size_t d = static_cast<std::size_t>(dim_);
        for (const auto& [key, block] : in) {
            for (const auto& t : terms_) {
                cur.assign(1, key);
                for (auto it = t.letters.rbegin(); it != t.letters.rend(); ++it) {
                    next.clear();
                    for (const auto& k : cur)
                        act(*it, k, next);
                    cur.swap(next);
                    if (cur.empty())
                        break;
                }
                for (const auto& k : cur) {
                    if (k.len > keep_len)
                        continue;
                    auto [pos, fresh] = out.try_emplace(k);
                    Block<S>& dst = pos->second;
                    if (fresh)
                        dst.assign(d * d, S{});
                    for (std::size_t i = 0; i < d; ++i)
                        for (std::size_t l = 0; l < d; ++l) {
                            const S& a = t.coeff[i * d + l];
                            if (is_zero_scalar(a))
                                continue;
                            for (std::size_t j = 0; j < d; ++j)
                                dst[i * d + j] += a * block[l * d + j];
                        }
                }
            }
        }
        return out;
    }

private:
    struct Term {
        std::vector<int> letters;
        Block<S> coeff;
    };

    static S one();

    int code_of(const Letter& l) const
    {
        return model_ == FreeModel::Semicircular ? l.gen - 1 : 2 * (l.gen - 1) + (l.star ? 1 : 0);
    }

    void act(int a, const FockKey& k, std::vector<FockKey>& out) const
    {
        const auto A = static_cast<unsigned>(alphabet_);
        const int first = k.len > 0 ? static_cast<int>(k.code % A) : -1;
        if (model_ == FreeModel::Semicircular) {
            if (first == a)
                out.push_back({k.code / A, k.len - 1});
            push_prepended(a, k, out);
        } else {
            if (first == (a ^ 1))
                out.push_back({k.code / A, k.len - 1});
            else
                push_prepended(a, k, out);
        }
    }

    void push_prepended(int a, const FockKey& k, std::vector<FockKey>& out) const
    {
        if (k.len + 1 > max_len_)
            fail(ErrorCode::SizeCap, "Fock word length exceeds the key capacity");
        out.push_back({k.code * static_cast<unsigned>(alphabet_) + static_cast<unsigned>(a), k.len + 1});
    }

    FreeModel model_;
    int dim_;
    int alphabet_ = 1;
    int max_len_ = 0;
    int degree_ = 0;
    std::vector<Term> terms_;
};

template <>
CRational FockEngine<CRational>::one()
{
    return CRational(1);
}
template <>
std::complex<double> FockEngine<std::complex<double>>::one()
{
    return {1.0, 0.0};
}

template <class S>
S vacuum_trace(const FockState<S>& st, int dim)
{
    S t{};
    auto it = st.find(FockKey{});
    if (it == st.end())
        return t;
    for (int i = 0; i < dim; ++i)
        t += it->second[static_cast<std::size_t>(i) * dim + i];
    return t;
}

void drop_zero_blocks(FockState<CRational>& st)
{
    for (auto it = st.begin(); it != st.end();) {
        bool zero = true;
        for (const auto& x : it->second)
            if (!x.is_zero()) {
                zero = false;
                break;
            }
        it = zero ? st.erase(it) : std::next(it);
    }
}

// sum over keys of tr(A_key^* B_key)
CRational state_inner(const FockState<CRational>& a, const FockState<CRational>& b)
{
    CRational s;
    for (const auto& [k, blk] : a) {
        auto it = b.find(k);
        if (it == b.end())
            continue;
        for (std::size_t i = 0; i < blk.size(); ++i)
            s += blk[i].conj() * it->second[i];
    }
    return s;
}

} // namespace

CRational free_matrix_moment_complex(const NCPoly& p, int power, FreeModel model)
{
    require(power >= 0, ErrorCode::Domain, "moment order must be >= 0");
    FockEngine<CRational> eng(p, model);
    auto st = eng.vacuum();
    if (power % 2 == 0 && p.is_self_adjoint(model)) {
        // m_{2k} = <P^k vacuum, P^k vacuum>
        for (int s = 1; s <= power / 2; ++s) {
            st = eng.apply(st, 1 << 30);
            drop_zero_blocks(st);
        }
        return state_inner(st, st) * Rational(1, eng.dim());
    }
    for (int s = 1; s <= power; ++s) {
        st = eng.apply(st, (power - s) * eng.degree());
        drop_zero_blocks(st);
    }
    CRational t = vacuum_trace(st, eng.dim());
    return t * Rational(1, eng.dim());
}

Rational free_matrix_moment(const NCPoly& p, int power, FreeModel model)
{
    const CRational v = free_matrix_moment_complex(p, power, model);
    require(sgn(v.im) == 0, ErrorCode::NotSelfAdjoint, "moment has a nonzero imaginary part");
    return v.re;
}

CRational free_matrix_moment_by_expansion(const NCPoly& p, int power, FreeModel model)
{
    const NCPoly pp = ncp_pow(p, power);
    CRational s;
    for (const auto& [w, a] : pp.terms()) {
        if (model == FreeModel::Semicircular)
            require(!has_star(w), ErrorCode::Domain, "starred letter in a semicircular polynomial");
        const Rational tau = free_word_moment(w, model);
        if (sgn(tau) != 0)
            s += a.trace() * tau;
    }
    return s * Rational(1, p.dim());
}

Rational free_spectral_moment(const NCPoly& p, const Poly& h, FreeModel model)
{
    if (h.is_zero())
        return 0;
    FockEngine<CRational> eng(p, model);
    const int q = h.degree();
    auto st = eng.vacuum();
    CRational acc = CRational(h.coeff(0));
    for (int s = 1; s <= q; ++s) {
        st = eng.apply(st, (q - s) * eng.degree());
        drop_zero_blocks(st);
        if (sgn(h.coeff(s)) != 0)
            acc += vacuum_trace(st, eng.dim()) * Rational(h.coeff(s) / eng.dim());
    }
    require(sgn(acc.im) == 0, ErrorCode::NotSelfAdjoint, "spectral moment has a nonzero imaginary part");
    return acc.re;
}

Json FreeLimit::to_json() const
{
    Json m = Json::array();
    for (const auto& x : moments)
        m.push_back(to_fraction_string(x));
    return Json{{"model", model_name(model)},
                {"moments", m},
                {"t_max", t_max},
                {"log_even_moments", log_even_moments},
                {"moment_lower", moment_lower},
                {"crude_upper", crude_upper},
                {"fit_estimate", fit_estimate},
                {"fit_margin", fit_margin},
                {"fit_residual", fit_residual},
                {"norm_bracket", Json::array({lower, upper})}};
}

namespace {

struct FitResult {
    double estimate = 0.0;
    double residual = 0.0;
    bool ok = false;
};

// log m_{2t} ~ 2t l - alpha log t + gamma (+ delta / t), over t in [lo, hi]
FitResult fit_edge(const std::vector<double>& logm, int lo, int hi, int params)
{
    FitResult r;
    lo = std::max(lo, 1);
    const int n = hi - lo + 1;
    if (n < params || params < 3)
        return r;
    Eigen::MatrixXd A(n, params);
    Eigen::VectorXd y(n);
    for (int t = lo; t <= hi; ++t) {
        const int i = t - lo;
        A(i, 0) = 2.0 * t;
        A(i, 1) = -std::log(static_cast<double>(t));
        A(i, 2) = 1.0;
        if (params > 3)
            A(i, 3) = 1.0 / t;
        y(i) = logm[static_cast<std::size_t>(t - 1)];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    r.estimate = std::exp(c(0));
    r.residual = std::sqrt((A * c - y).squaredNorm() / n);
    r.ok = std::isfinite(r.estimate);
    return r;
}

} // namespace

FreeLimit free_norm_estimate(const NCPoly& p, FreeModel model, int p_max, const FreeNormOptions& opts)
{
    require(p_max >= 4, ErrorCode::Domain, "free_norm_estimate needs p_max >= 4");
    if (model == FreeModel::Semicircular)
        require(!p.has_star(), ErrorCode::Domain, "starred letter in a semicircular polynomial");
    require(p.is_self_adjoint(model), ErrorCode::NotSelfAdjoint, "polynomial is not self-adjoint");

    FreeLimit out;
    out.model = model;
    const double kappa = model == FreeModel::Semicircular ? 2.0 : 1.0;
    out.crude_upper = crude_norm_bound(p, kappa);
    const int dim = p.dim();
    if (out.crude_upper == 0.0) {
        out.moments.assign(2, Rational(0));
        return out;
    }

    // exact prefix: m_{2t-1} = <V_{t-1}, V_t>, m_{2t} = <V_t, V_t> with V_t = P^t vacuum
    {
        FockEngine<CRational> eng(p, model);
        auto prev = eng.vacuum();
        for (int t = 1; t <= p_max; ++t) {
            auto cur = eng.apply(prev, 1 << 30);
            drop_zero_blocks(cur);
            if (cur.size() > opts.exact_state_budget)
                break;
            out.moments.push_back(state_inner(prev, cur).re / dim);
            out.moments.push_back(state_inner(cur, cur).re / dim);
            prev = std::move(cur);
        }
    }

    // floating even moments, rescaled by the crude bound each step
    FockEngine<std::complex<double>> eng(p, model);
    auto st = eng.vacuum();
    const double scale = out.crude_upper;
    for (int t = 1; t <= p_max; ++t) {
        FockState<std::complex<double>> next;
        try {
            next = eng.apply(st, 1 << 30);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SizeCap)
                throw;
            break;
        }
        if (next.size() > opts.state_budget)
            break;
        double fro = 0.0;
        for (auto& [k, blk] : next)
            for (auto& x : blk) {
                x /= scale;
                fro += std::norm(x);
            }
        if (fro == 0.0)
            break;
        out.log_even_moments.push_back(std::log(fro / dim) + 2.0 * t * std::log(scale));
        st = std::move(next);
    }
    out.t_max = static_cast<int>(out.log_even_moments.size());

    for (int t = 1; t <= out.t_max; ++t)
        out.moment_lower =
            std::max(out.moment_lower, std::exp(out.log_even_moments[static_cast<std::size_t>(t - 1)] / (2.0 * t)));

    out.lower = out.moment_lower;
    out.upper = std::max(out.crude_upper, out.moment_lower);
    const int T = out.t_max;
    const int lo = (T + 1) / 2;
    const int params = (T - lo + 1) >= 6 ? 4 : 3;
    const FitResult f1 = fit_edge(out.log_even_moments, lo, T, params);
    if (!f1.ok)
        return out;
    double spread = 0.0;
    for (const FitResult& g : {fit_edge(out.log_even_moments, lo - 1, T - 1, params),
                               fit_edge(out.log_even_moments, lo, T, params - 1)})
        if (g.ok)
            spread = std::max(spread, std::abs(g.estimate - f1.estimate));
    out.fit_estimate = f1.estimate;
    out.fit_residual = f1.residual;
    out.fit_margin = 2.0 * spread + 1e-9 * f1.estimate;
    out.upper = std::max(std::min(out.crude_upper, f1.estimate + out.fit_margin), out.moment_lower);
    out.lower = std::min(std::max(out.moment_lower, f1.estimate - out.fit_margin), out.upper);
    return out;
}

} // namespace strongconv
