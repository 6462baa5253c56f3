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

#include "cli/verify.hpp"

#include "common/error.hpp"
#include "expansion/expansion.hpp"
#include "genus/genus.hpp"
#include "interp/interp.hpp"
#include "ncpoly/free_moments.hpp"
#include "polycore/chebyshev.hpp"
#include "polycore/test_function.hpp"
#include "sampler/monte_carlo.hpp"
#include "weingarten/psi.hpp"
#include "weingarten/symmetric_group.hpp"
#include "weingarten/weingarten.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace strongconv {

Json CheckResult::to_json() const
{
    return Json{{"id", id}, {"title", title}, {"pass", pass}, {"summary", summary},
                {"seconds", seconds}, {"detail", detail}};
}

Json VerifyReport::to_json() const
{
    Json c = Json::array();
    for (const auto& r : checks)
        c.push_back(r.to_json());
    return Json{{"suite", suite}, {"pass", pass}, {"checks", c}};
}

std::vector<Word> all_words(int r, int max_len)
{
    std::vector<Word> out, layer{Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int g = 1; g <= r; ++g) {
                Word v = w;
                v.push_back({g, false});
                next.push_back(v);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
CheckResult timed(const std::string& id, const std::string& title, F&& body)
{
    CheckResult r;
    r.id = id;
    r.title = title;
    const auto t0 = Clock::now();
    try {
        body(r);
    } catch (const Error& e) {
        r.pass = false;
        r.summary = std::string("error (") + error_code_name(e.code()) + "): " + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// self-adjoint P = sum (A w + A^* w^*) over r letters; Gaussian letters are
// self-adjoint, Haar letters get the unitary adjoint
NCPoly random_sa(std::mt19937_64& rng, int r, int dim, int maxdeg, FreeModel model)
{
    std::uniform_int_distribution<int> d(-3, 3), g(1, r), len(0, maxdeg), coin(0, 1);
    NCPoly p(r, dim);
    for (int t = 0; t < 3; ++t) {
        Word w;
        const int n = t == 0 ? maxdeg : len(rng);
        for (int i = 0; i < n; ++i)
            w.push_back({g(rng), model == FreeModel::HaarUnitary && coin(rng) == 1});
        CMatrix a(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                a(i, j) = CRational(Rational(d(rng)), Rational(d(rng)));
        p.add_term(w, a);
        p.add_term(word_adjoint(w, model), a.adjoint());
    }
    return p;
}

Poly random_h(std::mt19937_64& rng, int q)
{
    std::uniform_int_distribution<int> c(-5, 5);
    std::vector<Rational> hc(static_cast<std::size_t>(q) + 1);
    for (auto& v : hc)
        v = c(rng);
    hc.back() = 1;
    return Poly(hc);
}

struct GaussCase {
    NCPoly P;
    Poly h;
};

// 100 (P, h) with q0 <= 2, q <= 6, D <= 3
std::vector<GaussCase> gaussian_corpus(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<GaussCase> out;
    for (int t = 0; t < 100; ++t) {
        const int q0 = 1 + t % 2, D = 1 + (t / 2) % 3;
        const int q = q0 == 1 ? 1 + t % 6 : 1 + (t / 6) % 6;
        out.push_back({random_sa(rng, 2, D, q0, FreeModel::Semicircular), random_h(rng, q)});
    }
    return out;
}

bool within_se(double mc, double se, double exact, double k = 4.0)
{
    return std::abs(mc - exact) <= k * se + 1e-12;
}

Word random_word(std::mt19937_64& rng, int r, int len, bool stars)
{
    std::uniform_int_distribution<int> g(1, r), coin(0, 1);
    Word w;
    for (int i = 0; i < len; ++i)
        w.push_back({g(rng), stars && coin(rng) == 1});
    return w;
}

bool balanced(const Word& w)
{
    std::map<int, int> net;
    for (const auto& l : w)
        net[l.gen] += l.star ? -1 : 1;
    for (auto [g, n] : net)
        if (n != 0)
            return false;
    return true;
}

// words drawn by `draw` until `count` are found; one per canonical class
// first, then distinct words if the classes run out
std::vector<Word> distinct_words(int count, const std::function<Word()>& draw, const std::function<bool(const Word&)>& keep)
{
    std::vector<Word> out;
    std::set<Word> classes, words;
    for (bool by_class : {true, false})
        for (int tries = 0; static_cast<int>(out.size()) < count && tries < 20000; ++tries) {
            const Word w = draw();
            if (!keep(w) || words.count(w))
                continue;
            if (by_class && !classes.insert(compact_canonical_word(w)).second)
                continue;
            words.insert(w);
            out.push_back(w);
        }
    return out;
}

} // namespace

CheckResult check_exact_wick(const VerifyOptions&)
{
    return timed("AC1", "exact Wick equivalence (|w| <= 6, r = 2, N in {2,3})", [](CheckResult& r) {
        long equal = 0, total = 0;
        Json bad = Json::array();
        for (const auto& w : all_words(2, 6)) {
            const Poly gue = gue_word_polynomial(w).poly;
            const Poly goe = goe_word_polynomial(w).poly;
            for (int N : {2, 3}) {
                for (auto [e, p] : {std::pair{Gaussian::GUE, &gue}, std::pair{Gaussian::GOE, &goe}}) {
                    ++total;
                    if ((*p)(Rational(1, N)) == entry_level_expectation(e, w, N))
                        ++equal;
                    else if (bad.size() < 10)
                        bad.push_back(Json{{"word", word_to_string(w)}, {"N", N}, {"ensemble", gaussian_name(e)}});
                }
            }
        }
        r.pass = equal == total;
        r.summary = std::to_string(equal) + "/" + std::to_string(total) + " exact equalities";
        r.detail = Json{{"equal", equal}, {"total", total}, {"mismatches", bad}};
    });
}

CheckResult check_gue_parity(const VerifyOptions& o)
{
    return timed("AC2", "GUE parity: odd coefficients of Phi_h vanish (100 cases)", [&](CheckResult& r) {
        int ok = 0, n = 0;
        for (const auto& c : gaussian_corpus(o.seed)) {
            ++n;
            const Poly phi = spectral_statistic_poly(Gaussian::GUE, c.P, c.h).poly;
            bool even = true;
            for (int k = 1; k <= phi.degree(); k += 2)
                even = even && sgn(phi.coeff(k)) == 0;
            ok += even;
        }
        r.pass = ok == n;
        r.summary = std::to_string(ok) + "/" + std::to_string(n) + " cases with exactly even Phi_h";
        r.detail = Json{{"cases", n}, {"even", ok}};
    });
}

CheckResult check_nu_free(const VerifyOptions& o)
{
    return timed("AC3", "GUE nu_1 = 0 and nu_0 = free moment (100 cases)", [&](CheckResult& r) {
        int ok1 = 0, ok0 = 0, n = 0;
        for (const auto& c : gaussian_corpus(o.seed)) {
            ++n;
            const auto res = nu_coeffs(ExpansionEnsemble::GUE, c.P, c.h, 2);
            ok1 += sgn(res.coeffs[1]) == 0;
            ok0 += res.coeffs[0] == free_spectral_moment(c.P, c.h, FreeModel::Semicircular);
        }
        r.pass = ok1 == n && ok0 == n;
        r.summary = "nu_1 = 0 in " + std::to_string(ok1) + "/" + std::to_string(n) + ", nu_0 = free moment in " +
                    std::to_string(ok0) + "/" + std::to_string(n);
        r.detail = Json{{"cases", n}, {"nu1_zero", ok1}, {"nu0_free", ok0}};
    });
}

CheckResult check_gse_duality(const VerifyOptions& o, long N, int replicas)
{
    return timed("AC4", "GOE/GSE duality at N = " + std::to_string(N), [&](CheckResult& r) {
        // 20 star-free words of length 2..4, in enumeration order
        std::vector<Word> words;
        for (const auto& w : all_words(2, 4))
            if (w.size() >= 2 && words.size() < 20)
                words.push_back(w);
        const auto mc = word_moments_mc(Ensemble::GSE, 2, N, words, replicas, o.seed, o.threads);
        int ok = 0;
        Json rows = Json::array();
        for (std::size_t i = 0; i < words.size(); ++i) {
            const Rational pred = goe_word_polynomial(words[i]).poly(Rational(-1, 2 * N));
            require(pred == gse_expectation(words[i], N), ErrorCode::Inconsistency, "gse_expectation disagrees");
            const bool good = within_se(mc[i].mean, mc[i].standard_error, pred.get_d());
            ok += good;
            rows.push_back(Json{{"word", word_to_string(words[i])}, {"predicted", pred.get_d()},
                                {"mc", mc[i].mean}, {"se", mc[i].standard_error}, {"within_4se", good}});
        }
        r.pass = ok * 100 >= 95 * static_cast<int>(words.size());
        r.summary = std::to_string(ok) + "/" + std::to_string(words.size()) + " within 4 SE (need 95%), " +
                    std::to_string(replicas) + " replicas";
        r.detail = Json{{"N", N}, {"replicas", replicas}, {"rows", rows}};
    });
}

CheckResult check_weingarten(const VerifyOptions& o, long N, int replicas)
{
    return timed("AC5", "Weingarten exactness vs Haar-U MC at N = " + std::to_string(N), [&](CheckResult& r) {
        std::mt19937_64 rng(o.seed + 5);
        std::uniform_int_distribution<int> half(1, 3);
        const auto words = distinct_words(
            20, [&] { return random_word(rng, 2, 2 * half(rng), true); },
            [](const Word& w) { return balanced(w); });
        require(words.size() == 20, ErrorCode::Inconsistency, "could not draw 20 balanced words");
        const auto mc = word_moments_mc(Ensemble::HaarU, 2, N, words, replicas, o.seed + 5, o.threads);
        int ok = 0;
        Json rows = Json::array();
        for (std::size_t i = 0; i < words.size(); ++i) {
            const Rational exact = unitary_word_moment(words[i], N);
            const bool good = within_se(mc[i].mean, mc[i].standard_error, exact.get_d());
            ok += good;
            rows.push_back(Json{{"word", word_to_string(words[i])}, {"exact", to_fraction_string(exact)},
                                {"mc", mc[i].mean}, {"se", mc[i].standard_error}, {"within_4se", good}});
        }
        // Wg on S_2 against Gram inversion
        bool gram_ok = true;
        Json gram_rows = Json::array();
        for (long n = 3; n <= 12; ++n) {
            const auto gram = wg_unitary_gram(2, n);
            const Rational id = wg_unitary({1, 1}, n), tr = wg_unitary({2}, n);
            gram_ok = gram_ok && gram[0][0] == id && gram[1][1] == id && gram[0][1] == tr && gram[1][0] == tr;
            gram_rows.push_back(Json{{"N", n}, {"wg_11", to_fraction_string(id)}, {"wg_2", to_fraction_string(tr)}});
        }
        r.pass = ok == static_cast<int>(words.size()) && gram_ok;
        r.summary = std::to_string(ok) + "/20 balanced words within 4 SE; Wg_2 Gram oracle " +
                    (gram_ok ? "exact" : "MISMATCH") + " for N = 3..12";
        r.detail = Json{{"N", N}, {"replicas", replicas}, {"rows", rows}, {"wg2", gram_rows}};
    });
}

CheckResult check_reconstruction(const VerifyOptions& o)
{
    return timed("AC6", "rational reconstruction of Psi_h (10 cases, qq0 <= 6)", [&](CheckResult& r) {
        std::mt19937_64 rng(o.seed + 6);
        int ok = 0;
        Json rows = Json::array();
        for (int t = 0; t < 10; ++t) {
            const int q0 = 1 + t % 2;
            const int q = 1 + (t / 2) % (6 / q0);
            const NCPoly P = random_sa(rng, 2, 1 + t % 2, q0, FreeModel::HaarUnitary);
            const Poly h = random_h(rng, q);
            const PsiReport rep = reconstruct_psi(P, h, CompactGroup::Unitary);
            const int L = rep.L;
            const std::set<long> sampled(rep.sample_N.begin(), rep.sample_N.end());
            // every N in (L, L+50] outside the sample set, plus ten beyond the samples
            std::vector<long> check;
            for (long N = L + 1; N <= L + 50; ++N)
                if (!sampled.count(N))
                    check.push_back(N);
            const long last = rep.sample_N.empty() ? L : rep.sample_N.back();
            for (long N = last + 1; N <= last + 10; ++N)
                check.push_back(N);
            bool agree = true;
            for (long N : check)
                agree = agree && rep.psi(Rational(1, N)) == compact_expectation(P, h, CompactGroup::Unitary, N);
            const int bound = static_cast<int>(std::floor(3.0 * L * (1.0 + std::log(static_cast<double>(L)))));
            const bool deg_ok = rep.psi.num.degree() <= bound;
            bool parity = rep.psi.den.is_even() && rep.psi.num.is_even();
            const bool good = agree && deg_ok && parity;
            ok += good;
            rows.push_back(Json{{"qq0", L}, {"numerator_degree", rep.psi.num.degree()}, {"bound", bound},
                                {"checked_N", check.size()}, {"agree", agree}, {"even", parity}});
        }
        r.pass = ok == 10;
        r.summary = std::to_string(ok) + "/10 cases exact at all checked N with degree bound and parity";
        r.detail = Json{{"rows", rows}};
    });
}

CheckResult check_sp_duality(const VerifyOptions& o, long N, int replicas)
{
    return timed("AC7", "O/Sp duality: Haar Sp MC at N = " + std::to_string(N), [&](CheckResult& r) {
        std::mt19937_64 rng(o.seed + 7);
        std::uniform_int_distribution<int> len(1, 4);
        const auto words = distinct_words(
            20, [&] { return random_word(rng, 2, len(rng), true); }, [](const Word&) { return true; });
        const auto mc = word_moments_mc(Ensemble::HaarSp, 2, N, words, replicas, o.seed + 7, o.threads);
        int ok = 0;
        Json rows = Json::array();
        for (std::size_t i = 0; i < words.size(); ++i) {
            const Rational pred = symplectic_expectation(words[i], N);
            const bool good = within_se(mc[i].mean, mc[i].standard_error, pred.get_d());
            ok += good;
            rows.push_back(Json{{"word", word_to_string(words[i])}, {"predicted", to_fraction_string(pred)},
                                {"mc", mc[i].mean}, {"se", mc[i].standard_error}, {"within_4se", good}});
        }
        r.pass = ok == static_cast<int>(words.size());
        r.summary = std::to_string(ok) + "/" + std::to_string(words.size()) + " words within 4 SE, " +
                    std::to_string(replicas) + " replicas";
        r.detail = Json{{"N", N}, {"replicas", replicas}, {"rows", rows}};
    });
}

CheckResult check_interpolation(const VerifyOptions& o)
{
    return timed("AC8", "interpolation from 1/N samples", [&](CheckResult& r) {
        std::mt19937_64 rng(o.seed + 8);
        std::uniform_int_distribution<int> d(-1000, 1000);
        Json ratios = Json::object();
        bool ratio_ok = true;
        for (int q : {5, 10, 20}) {
            const Rational delta(1, 24 * q);
            const Poly shift({Rational(-1), 1 / delta});
            double worst = 0.0;
            for (int t = 0; t < 500; ++t) {
                Poly h;
                for (int j = 0; j <= q; ++j)
                    h += cheb_poly(ChebKind::First, j).compose(shift) * Rational(d(rng), 1000);
                worst = std::max(worst, inverse_integer_ratio(h, delta.get_d()).ratio);
            }
            ratios[std::to_string(q)] = worst;
            ratio_ok = ratio_ok && worst <= 100.0;
        }
        bool bounded = true;
        std::vector<double> sups;
        for (int q = 1; q <= 16; ++q) {
            const Poly h = optimality_example(q);
            for (int N = 1; N <= 10 * q; ++N)
                bounded = bounded && abs(h(Rational(1, N))) <= 1;
            sups.push_back(sup_norm(h, 0.0, 1.0 / q));
        }
        bool monotone = true;
        for (std::size_t i = 1; i < sups.size(); ++i)
            monotone = monotone && sups[i] > sups[i - 1];
        r.pass = ratio_ok && bounded && monotone;
        r.summary = "max ratios q=5,10,20: " + fmt(ratios["5"].get<double>()) + ", " + fmt(ratios["10"].get<double>()) +
                    ", " + fmt(ratios["20"].get<double>()) + " (cap 100); |h_q(1/N)| <= 1: " +
                    (bounded ? "yes" : "no") + "; [0,1/q]-sup increasing in q: " + (monotone ? "yes" : "no");
        r.detail = Json{{"max_ratio", ratios}, {"optimality_bounded", bounded}, {"sup_0_1_over_q", sups},
                        {"monotone", monotone}};
    });
}

CheckResult check_support(const VerifyOptions&)
{
    return timed("AC9", "support property for P = x1 (GUE), k <= 3", [&](CheckResult& r) {
        const NCPoly x1 = NCPoly::letter(1, 1, {1, false});
        // eps = 0.2 puts the vanishing radius at 2 (1 + eps/2) = 2.2
        const SupportReport rep = support_test(ExpansionEnsemble::GUE, x1, 0.2, 3, {});
        auto bump = [](double x) { return std::abs(x) < 1.0 ? std::pow(1.0 - x * x, 8) : 0.0; };
        const ChebSeries s = cheb_expand(bump, rep.radius, 512, 1e-16);
        const SmoothValue control = nu_smooth(ExpansionEnsemble::GUE, x1, s, 0);
        const bool control_ok = std::abs(control.value) > control.error_bound;
        r.pass = rep.pass && control_ok && rep.vanishing_radius >= 2.2 - 1e-12;
        std::string vals;
        for (std::size_t k = 0; k < rep.values.size(); ++k)
            vals += (k ? ", " : "") + fmt(std::abs(rep.values[k].value)) + "<=" + fmt(rep.tolerances[k]);
        r.summary = "|nu_k(chi)| vs tolerance: " + vals + "; control nu_0 = " + fmt(control.value) +
                    " (error bound " + fmt(control.error_bound) + ")";
        r.detail = Json{{"support", rep.to_json()}, {"control", control.to_json()}};
    });
}

CheckResult check_test_functions(const VerifyOptions&)
{
    return timed("AC12", "test functions: vanishing, unit plateau, derivative envelope k <= 6", [&](CheckResult& r) {
        const double K = 4.0, rho = 2.0, eps = 0.5;
        const int m = 6;
        const TestFunction chi = build_test_function(m, K, rho, eps);
        bool props = true;
        for (int i = 0; i <= 10000; ++i) {
            const double x = -K + 2.0 * K * i / 10000.0;
            const double v = chi(x);
            props = props && v >= 0.0 && v <= 1.0;
            if (std::abs(x) <= rho + eps / 2)
                props = props && v == 0.0;
            if (std::abs(x) >= rho + eps)
                props = props && v == 1.0;
        }
        Json worst = Json::array();
        bool env_ok = true;
        for (int k = 0; k <= 6; ++k) {
            double w = 0.0;
            for (int i = 0; i < 10000; ++i)
                w = std::max(w, std::abs(chi.theta_derivative(2 * std::numbers::pi * i / 10000.0, k + 1)));
            env_ok = env_ok && w <= chi.derivative_envelope(k);
            worst.push_back(Json{{"k", k}, {"max", w}, {"envelope", chi.derivative_envelope(k)}});
        }
        r.pass = props && env_ok;
        r.summary = std::string("defining properties on 10^4 grid: ") + (props ? "hold" : "FAIL") +
                    "; derivative envelope k <= 6: " + (env_ok ? "holds" : "FAIL");
        r.detail = Json{{"m", m}, {"K", K}, {"rho", rho}, {"eps", eps}, {"derivatives", worst}};
    });
}

const std::vector<std::string>& verify_suites()
{
    static const std::vector<std::string> s = {"exact", "parity", "duality", "interp", "support", "weingarten", "all"};
    return s;
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& o)
{
    VerifyReport rep;
    rep.suite = suite;
    const bool all = suite == "all";
    if (std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
        fail(ErrorCode::Parse, "unknown verify suite '" + suite + "'");
    if (all || suite == "exact")
        rep.checks.push_back(check_exact_wick(o));
    if (all || suite == "parity") {
        rep.checks.push_back(check_gue_parity(o));
        rep.checks.push_back(check_nu_free(o));
    }
    if (all || suite == "duality") {
        rep.checks.push_back(check_gse_duality(o));
        rep.checks.push_back(check_sp_duality(o));
    }
    if (all || suite == "weingarten") {
        rep.checks.push_back(check_weingarten(o));
        rep.checks.push_back(check_reconstruction(o));
    }
    if (all || suite == "interp")
        rep.checks.push_back(check_interpolation(o));
    if (all || suite == "support") {
        rep.checks.push_back(check_support(o));
        rep.checks.push_back(check_test_functions(o));
    }
    for (const auto& c : rep.checks)
        rep.pass = rep.pass && c.pass;
    return rep;
}

} // namespace strongconv
