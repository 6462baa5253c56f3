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

#include "expansion/expansion.hpp"

#include "common/error.hpp"
#include "genus/genus.hpp"
#include "ncpoly/free_moments.hpp"
#include "polycore/test_function.hpp"
#include "sampler/monte_carlo.hpp"
#include "weingarten/psi.hpp"

#include <algorithm>
#include <cctype>
#include <cfloat>
#include <cmath>

namespace strongconv {

const char* expansion_ensemble_name(ExpansionEnsemble e)
{
    switch (e) {
    case ExpansionEnsemble::GUE: return "gue";
    case ExpansionEnsemble::GOE: return "goe";
    case ExpansionEnsemble::HaarU: return "haar-u";
    }
    return "?";
}

ExpansionEnsemble parse_expansion_ensemble(const std::string& name)
{
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "gue")
        return ExpansionEnsemble::GUE;
    if (s == "goe")
        return ExpansionEnsemble::GOE;
    if (s == "haar-u" || s == "haaru" || s == "haar_u" || s == "unitary")
        return ExpansionEnsemble::HaarU;
    fail(ErrorCode::Parse, "unknown expansion ensemble '" + name + "' (gue, goe, haar-u)");
}

FreeModel expansion_model(ExpansionEnsemble e)
{
    return e == ExpansionEnsemble::HaarU ? FreeModel::HaarUnitary : FreeModel::Semicircular;
}

Json ExpansionResult::to_json() const
{
    Json c = Json::array();
    for (const auto& v : coeffs)
        c.push_back(to_fraction_string(v));
    return Json{{"ensemble", expansion_ensemble_name(ensemble)},
                {"order", order},
                {"exact", exact},
                {"coeffs", exact ? c : Json(values)},
                {"values", values},
                {"errors", errors}};
}

namespace {

ExpansionResult from_poly_prefix(ExpansionEnsemble e, const std::vector<Rational>& taylor, int m)
{
    ExpansionResult r;
    r.ensemble = e;
    r.order = m;
    for (int i = 0; i < m; ++i) {
        const Rational c = i < static_cast<int>(taylor.size()) ? taylor[static_cast<std::size_t>(i)] : Rational(0);
        r.coeffs.push_back(c);
        r.values.push_back(c.get_d());
        r.errors.push_back(0.0);
    }
    return r;
}

} // namespace

ExpansionResult nu_coeffs(ExpansionEnsemble e, const NCPoly& P, const Poly& h, int m)
{
    require(m >= 1, ErrorCode::Domain, "order m must be >= 1");
    require(e != ExpansionEnsemble::HaarU, ErrorCode::Domain, "nu coefficients are for GUE or GOE");
    const GenusPoly phi =
        spectral_statistic_poly(e == ExpansionEnsemble::GUE ? Gaussian::GUE : Gaussian::GOE, P, h);
    return from_poly_prefix(e, phi.poly.coeffs(), m);
}

ExpansionResult mu_coeffs(const NCPoly& P, const Poly& h, int m)
{
    require(m >= 1, ErrorCode::Domain, "order m must be >= 1");
    const PsiReport rep = reconstruct_psi(P, h, CompactGroup::Unitary);
    return from_poly_prefix(ExpansionEnsemble::HaarU, rep.psi.taylor(m - 1), m);
}

ExpansionResult expansion_coeffs(ExpansionEnsemble e, const NCPoly& P, const Poly& h, int m)
{
    return e == ExpansionEnsemble::HaarU ? mu_coeffs(P, h, m) : nu_coeffs(e, P, h, m);
}

std::optional<SingleLetterForm> single_letter_form(const NCPoly& P, ExpansionEnsemble e)
{
    SingleLetterForm f;
    f.shift = 0;
    f.scale = 0;
    int gen = 0;
    bool have_plain = false, have_star = false;
    Rational star_scale = 0;
    for (const auto& [w, A] : P.terms()) {
        // A must be a real multiple of the identity
        const CRational a00 = A(0, 0);
        if (sgn(a00.im) != 0 || !(A == CMatrix::scalar(P.dim(), a00)))
            return std::nullopt;
        if (w.empty()) {
            f.shift = a00.re;
            continue;
        }
        if (w.size() != 1 || (gen != 0 && w[0].gen != gen))
            return std::nullopt;
        gen = w[0].gen;
        if (w[0].star) {
            have_star = true;
            star_scale = a00.re;
        } else {
            have_plain = true;
            f.scale = a00.re;
        }
    }
    if (gen == 0 || !have_plain)
        return std::nullopt;
    if (e == ExpansionEnsemble::HaarU) {
        if (!have_star || star_scale != f.scale)
            return std::nullopt;
    } else if (have_star) {
        return std::nullopt;
    }
    f.gen = gen;
    return f;
}

std::vector<Rational> monomial_functional(ExpansionEnsemble e, const NCPoly& P, int k, int n_max)
{
    require(k >= 0 && n_max >= 0, ErrorCode::Domain, "k and n_max must be >= 0");
    const auto form = single_letter_form(P, e);
    if (form && e != ExpansionEnsemble::GOE) {
        // functional of the bare letter on a^i, i <= n_max
        std::vector<Rational> base(static_cast<std::size_t>(n_max + 1), Rational(0));
        if (e == ExpansionEnsemble::GUE) {
            if (k % 2 == 0) {
                const auto hz = harer_zagier_table(n_max / 2, k / 2);
                for (int m = 0; 2 * m <= n_max; ++m)
                    base[static_cast<std::size_t>(2 * m)] = Rational(hz[static_cast<std::size_t>(m)][static_cast<std::size_t>(k / 2)]);
            }
        } else if (k == 0) {
            // u + u^* has the arcsine law for every N: mu_0 only
            for (int m = 0; 2 * m <= n_max; ++m)
                base[static_cast<std::size_t>(2 * m)] = Rational(binomial(static_cast<unsigned>(2 * m), static_cast<unsigned>(m)));
        }
        std::vector<Rational> out(static_cast<std::size_t>(n_max + 1), Rational(0));
        for (int n = 0; n <= n_max; ++n) {
            Rational s = 0;
            Rational cpow = 1;
            for (int i = 0; i <= n; ++i) {
                if (sgn(base[static_cast<std::size_t>(i)]) != 0)
                    s += Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(i))) * cpow *
                         pow(form->shift, n - i) * base[static_cast<std::size_t>(i)];
                cpow *= form->scale;
            }
            s.canonicalize();
            out[static_cast<std::size_t>(n)] = s;
        }
        return out;
    }
    // generic: one exact expansion per monomial, until an engine cap is hit
    std::vector<Rational> out;
    const int q0 = std::max(1, P.degree());
    for (int n = 0; n <= n_max; ++n) {
        if (e == ExpansionEnsemble::HaarU && n * q0 > 12)
            break;
        try {
            const ExpansionResult r = expansion_coeffs(e, P, Poly::monomial(n), k + 1);
            out.push_back(r.coeffs[static_cast<std::size_t>(k)]);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::SizeCap)
                break;
            throw;
        }
    }
    return out;
}

std::vector<double> chebyshev_functional(const std::vector<Rational>& moments, const Rational& K)
{
    require(!moments.empty(), ErrorCode::Domain, "no moments given");
    require(sgn(K) > 0, ErrorCode::Domain, "K must be positive");
    Rational kc = K;
    kc.canonicalize();
    const Integer a = kc.get_num(), b = kc.get_den();
    const int J = static_cast<int>(moments.size()) - 1;
    Integer S = 1;
    for (const auto& m : moments) {
        Rational mc = m;
        mc.canonicalize();
        mpz_lcm(S.get_mpz_t(), S.get_mpz_t(), mc.get_den().get_mpz_t());
    }
    // W_n = S M_n b^n a^{J-n}; R_j(n) = S a^J nu(y^n T_j(y)), y = x/K
    std::vector<Integer> apow(static_cast<std::size_t>(J + 1));
    apow[0] = 1;
    for (int i = 1; i <= J; ++i)
        apow[static_cast<std::size_t>(i)] = apow[static_cast<std::size_t>(i - 1)] * a;
    std::vector<Integer> prev(static_cast<std::size_t>(J + 1));
    Integer bpow = 1;
    for (int n = 0; n <= J; ++n) {
        Rational mc = moments[static_cast<std::size_t>(n)];
        mc.canonicalize();
        prev[static_cast<std::size_t>(n)] = (S / mc.get_den()) * mc.get_num() * bpow * apow[static_cast<std::size_t>(J - n)];
        bpow *= b;
    }
    const Integer scale = S * apow[static_cast<std::size_t>(J)];
    const mpf_class fscale(scale, 256);
    auto to_double = [&](const Integer& v) {
        mpf_class f(v, 256);
        f /= fscale;
        return f.get_d();
    };
    std::vector<double> out;
    out.push_back(to_double(prev[0]));
    if (J == 0)
        return out;
    std::vector<Integer> cur(prev.begin() + 1, prev.end());
    out.push_back(to_double(cur[0]));
    for (int j = 1; j < J; ++j) {
        std::vector<Integer> next(static_cast<std::size_t>(J - j));
        for (int n = 0; n < J - j; ++n)
            next[static_cast<std::size_t>(n)] = 2 * cur[static_cast<std::size_t>(n + 1)] - prev[static_cast<std::size_t>(n)];
        out.push_back(to_double(next[0]));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return out;
}

Json SmoothValue::to_json() const
{
    return Json{{"value", value},
                {"error_bound", error_bound},
                {"truncation_error", truncation_error},
                {"growth_envelope", growth_envelope},
                {"rounding", rounding},
                {"basis_size", basis_size}};
}

SmoothValue nu_smooth(ExpansionEnsemble e, const NCPoly& P, const ChebSeries& chi, int k)
{
    require(k >= 0, ErrorCode::Domain, "k must be >= 0");
    const double kappa = e == ExpansionEnsemble::HaarU ? 1.0 : 2.0;
    const double crude = crude_norm_bound(P, kappa);
    if (chi.radius < crude * (1.0 - 1e-12))
        fail(ErrorCode::Domain, "Chebyshev radius " + std::to_string(chi.radius) + " is below the crude norm bound " +
                                    std::to_string(crude));
    const int deg = std::max(0, chi.degree());
    const int want = std::max(2 * deg, 64);
    const auto moments = monomial_functional(e, P, k, want);
    const int have = static_cast<int>(moments.size()) - 1;
    if (have < deg)
        fail(ErrorCode::IncompleteBasis, "exact moments available up to degree " + std::to_string(have) +
                                             ", Chebyshev series has degree " + std::to_string(deg));
    const auto basis = chebyshev_functional(moments, rational_from_double(chi.radius));
    SmoothValue out;
    out.basis_size = static_cast<int>(basis.size());
    double abs_sum = 0.0;
    for (std::size_t j = 0; j < chi.coeffs.size(); ++j) {
        out.value += chi.coeffs[j] * basis[j];
        abs_sum += std::abs(chi.coeffs[j] * basis[j]);
    }
    for (double b : basis)
        out.growth_envelope = std::max(out.growth_envelope, std::abs(b));
    out.truncation_error = chi.truncation_error;
    out.rounding = 8.0 * DBL_EPSILON * abs_sum;
    out.error_bound = out.truncation_error * out.growth_envelope + out.rounding;
    return out;
}

Json SupportReport::to_json() const
{
    Json vals = Json::array();
    for (const auto& v : values)
        vals.push_back(v.to_json());
    return Json{{"ensemble", expansion_ensemble_name(ensemble)},
                {"epsilon", epsilon},
                {"k_max", k_max},
                {"norm_bracket", Json::array({norm_lower, norm_upper})},
                {"vanishing_radius", vanishing_radius},
                {"radius", radius},
                {"series_degree", series_degree},
                {"values", vals},
                {"tolerances", tolerances},
                {"pass", pass}};
}

SupportReport support_test(ExpansionEnsemble e, const NCPoly& P, double eps, int k_max, const SupportOptions& opts)
{
    require(eps > 0 && eps <= 1, ErrorCode::Domain, "eps must lie in (0, 1]");
    require(k_max >= 0, ErrorCode::Domain, "k_max must be >= 0");
    const FreeModel model = expansion_model(e);
    const FreeLimit fl = free_norm_estimate(P, model, opts.p_max);
    if (fl.upper - fl.lower > 0.25 * eps * fl.upper)
        fail(ErrorCode::Domain, "free norm bracket [" + std::to_string(fl.lower) + ", " + std::to_string(fl.upper) +
                                    "] is wider than eps/4");
    SupportReport rep;
    rep.ensemble = e;
    rep.epsilon = eps;
    rep.k_max = k_max;
    rep.norm_lower = fl.lower;
    rep.norm_upper = fl.upper;
    const double crude = crude_norm_bound(P, e == ExpansionEnsemble::HaarU ? 1.0 : 2.0);
    const double K = std::ceil(64.0 * std::max(1.25 * crude, 1.1 * (1.0 + eps) * fl.upper)) / 64.0;
    const int m = opts.smoothness > 0 ? opts.smoothness : 2 * k_max + 4;
    const TestFunction chi(m, K, fl.upper, eps * fl.upper, opts.nodes);
    rep.vanishing_radius = fl.upper * (1.0 + eps / 2.0);
    rep.radius = K;
    rep.series_degree = chi.series().degree();
    rep.pass = true;
    for (int k = 0; k <= k_max; ++k) {
        const SmoothValue v = nu_smooth(e, P, chi.series(), k);
        rep.values.push_back(v);
        rep.tolerances.push_back(v.error_bound);
        if (!(std::abs(v.value) <= v.error_bound))
            rep.pass = false;
    }
    return rep;
}

Json DualityReport::to_json() const
{
    Json rs = Json::array();
    for (const auto& r : rows)
        rs.push_back(Json{{"N", r.N},
                          {"predicted", r.predicted},
                          {"mc", r.mc},
                          {"standard_error", r.standard_error},
                          {"z", r.z}});
    return Json{{"kind", kind == DualKind::GSE ? "goe-gse" : "o-sp"}, {"rows", rs}};
}

DualityReport duality_report(DualKind kind, const NCPoly& P, const Poly& h, const std::vector<long>& N_list,
                             int replicas, std::uint64_t seed)
{
    DualityReport rep;
    rep.kind = kind;
    std::optional<GenusPoly> phi;
    if (kind == DualKind::GSE)
        phi = spectral_statistic_poly(Gaussian::GOE, P, h);
    for (long N : N_list) {
        DualityRow row;
        row.N = N;
        row.predicted = kind == DualKind::GSE ? Rational(phi->poly(Rational(-1, 2 * N))).get_d()
                                              : symplectic_spectral(P, h, N).get_d();
        SampleSpec spec;
        spec.ensemble = kind == DualKind::GSE ? Ensemble::GSE : Ensemble::HaarSp;
        spec.N = N;
        spec.P = P;
        spec.replicas = replicas;
        spec.seed = seed + static_cast<std::uint64_t>(N);
        const SampleRun run = run_samples(spec, {{"h", h}});
        const EmpiricalStats st = summarize(run.stats.at("h"));
        row.mc = st.mean;
        row.standard_error = st.standard_error;
        row.z = st.standard_error > 0 ? (st.mean - row.predicted) / st.standard_error : 0.0;
        rep.rows.push_back(row);
    }
    return rep;
}

Poly gue_duality_defect(const NCPoly& P, const Poly& h)
{
    const Poly phi = spectral_statistic_poly(Gaussian::GUE, P, h).poly;
    return phi - phi.scaled_argument(Rational(-1));
}

Json TheoremBound::to_json() const
{
    return Json{{"value", value}, {"vacuous", vacuous}};
}

TheoremBound theorem_bound(TheoremKind kind, long N, double eps, int q0, int r, double c)
{
    require(eps > 0 && eps <= 1, ErrorCode::Domain, "eps must lie in (0, 1]");
    require(c > 0, ErrorCode::Domain, "c must be positive");
    require(N >= 1 && q0 >= 1 && r >= 1, ErrorCode::Domain, "N, q0 and r must be >= 1");
    const double n = static_cast<double>(N);
    double exponent = -c * n * eps * eps;
    if (kind == TheoremKind::Haar) {
        const double l = std::log(n * eps * eps);
        require(l != 0.0, ErrorCode::Domain, "log(N eps^2) vanishes");
        exponent /= l * l;
    }
    TheoremBound b;
    b.value = std::exp(std::log(n / (c * eps)) + exponent);
    b.vacuous = b.value >= 1.0;
    return b;
}

} // namespace strongconv
