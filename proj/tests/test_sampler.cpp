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

#include "doctest.h"

#include "common/error.hpp"
#include "genus/genus.hpp"
#include "sampler/monte_carlo.hpp"
#include "weingarten/orthogonal.hpp"
#include "weingarten/psi.hpp"
#include "weingarten/weingarten.hpp"

#include <sstream>

using namespace strongconv;

namespace {

NCPoly x1() { return NCPoly::letter(1, 1, {1, false}); }

CMatrix scalar1(int v)
{
    CMatrix a(1);
    a(0, 0) = CRational(Rational(v));
    return a;
}

bool within(const MomentEstimate& m, double exact, double k = 4.0)
{
    return std::abs(m.mean - exact) <= k * m.standard_error + 1e-12;
}

} // namespace

TEST_CASE("Philox known answers")
{
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct")
{
    Stream a(42, 3, 1), b(42, 3, 1), c(42, 3, 2), d(43, 3, 1);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 100; ++i) {
        const double va = a.normal(), vb = b.normal(), vc = c.normal(), vd = d.normal();
        CHECK(va == vb);
        differ_c |= va != vc;
        differ_d |= va != vd;
    }
    CHECK(differ_c);
    CHECK(differ_d);
    Stream s(7, 0, 0);
    double sum = 0, sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        sum += z;
        sq += z * z;
        const double u = s.uniform();
        CHECK((u > 0 && u < 1));
    }
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(sq / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("Gaussian ensembles")
{
    Stream s(1, 0, 0);
    for (Ensemble e : {Ensemble::GUE, Ensemble::GOE, Ensemble::GSE}) {
        const CMat m = sample_gaussian(e, 12, s);
        CHECK(m.rows() == matrix_dim(e, 12));
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    }
    const CMat g = sample_gaussian(Ensemble::GSE, 15, s);
    const Eigen::VectorXd ev = eigenvalues(g);
    for (Eigen::Index i = 0; i < ev.size(); i += 2)
        CHECK(std::abs(ev(i) - ev(i + 1)) <= 1e-8);
    CHECK_THROWS_AS(sample_gaussian(Ensemble::HaarU, 3, s), Error);

    const Word xx = parse_word("1,1");
    const long N = 50;
    const auto gue = word_moments_mc(Ensemble::GUE, 1, N, {xx}, 10000, 3);
    CHECK(within(gue[0], 1.0));
    const auto goe = word_moments_mc(Ensemble::GOE, 1, N, {xx}, 10000, 4);
    CHECK(within(goe[0], 1.0 + 1.0 / N));
}

TEST_CASE("Haar ensembles")
{
    Stream s(2, 0, 0);
    for (Ensemble e : {Ensemble::HaarU, Ensemble::HaarO, Ensemble::HaarSp}) {
        const CMat w = sample_haar(e, 9, s);
        const long d = matrix_dim(e, 9);
        CHECK((w.adjoint() * w - CMat::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs((w * w.adjoint()).trace().real() / static_cast<double>(d) - 1.0) <= 1e-13);
    }
    const CMat o = sample_haar(Ensemble::HaarO, 7, s);
    CHECK(o.imag().cwiseAbs().maxCoeff() == 0.0);
    // S^T J S = J for the quaternionic embedding
    const long n = 6;
    const CMat sp = sample_haar(Ensemble::HaarSp, n, s);
    CMat J = CMat::Zero(2 * n, 2 * n);
    for (long i = 0; i < n; ++i) {
        J(2 * i, 2 * i + 1) = 1;
        J(2 * i + 1, 2 * i) = -1;
    }
    CHECK((sp.transpose() * J * sp - J).cwiseAbs().maxCoeff() <= 1e-12);

    const auto tr = word_moments_mc(Ensemble::HaarU, 1, 10, {parse_word("1")}, 10000, 5);
    CHECK(std::abs(tr[0].mean) <= 4 * tr[0].standard_error);
    const Word comm = parse_word("1,2,1*,2*");
    const auto c = word_moments_mc(Ensemble::HaarU, 2, 8, {comm}, 20000, 6);
    CHECK(within(c[0], unitary_word_moment(comm, 8).get_d()));
}

TEST_CASE("MC battery against exact engines")
{
    struct Case {
        Ensemble e;
        std::string w;
        long N;
    };
    const std::vector<Case> cases = {
        {Ensemble::GUE, "1,1", 6},         {Ensemble::GUE, "1,1,1,1", 6},   {Ensemble::GUE, "1,2,1,2", 6},
        {Ensemble::GUE, "1,1,2,2", 5},     {Ensemble::GUE, "1,1,1,1,1,1", 4}, {Ensemble::GUE, "1,2,1,1,2,1", 5},
        {Ensemble::GUE, "1,1,1,1", 3},     {Ensemble::GUE, "1,2,2,1,1,2", 4}, {Ensemble::GOE, "1,1", 6},
        {Ensemble::GOE, "1,1,1,1", 5},     {Ensemble::GOE, "1,2,1,2", 6},   {Ensemble::GOE, "1,1,2,2", 4},
        {Ensemble::GOE, "1,1,1,1,1,1", 5}, {Ensemble::GOE, "1,2,1,1,2,1", 4}, {Ensemble::GOE, "1,1,1,1", 3},
        {Ensemble::GSE, "1,1", 5},         {Ensemble::GSE, "1,1,1,1", 4},   {Ensemble::GSE, "1,2,1,2", 5},
        {Ensemble::GSE, "1,1,2,2", 3},     {Ensemble::GSE, "1,1,1,1,1,1", 3}, {Ensemble::HaarU, "1,1*", 3},
        {Ensemble::HaarU, "1,2,1*,2*", 6}, {Ensemble::HaarU, "1,1,1*,1*", 5}, {Ensemble::HaarU, "1,1,2,1*,1*,2*", 7},
        {Ensemble::HaarU, "1,2,1,2*,1*,1*", 7}, {Ensemble::HaarU, "1,2,1*,2*,1,2*", 7}, {Ensemble::HaarU, "1,1,2*,2*", 5},
        {Ensemble::HaarO, "1,1", 4},       {Ensemble::HaarO, "1,1,1,1", 8}, {Ensemble::HaarO, "1,2,1,2", 8},
        {Ensemble::HaarO, "1,1*,1,1", 8},  {Ensemble::HaarO, "1,2,1*,2*", 8}, {Ensemble::HaarO, "1,1,2,2", 9},
        {Ensemble::HaarO, "1,1,1,1,1,1", 12}, {Ensemble::HaarSp, "1,1", 4}, {Ensemble::HaarSp, "1,1,1,1", 8},
        {Ensemble::HaarSp, "1,2,1,2", 8},  {Ensemble::HaarSp, "1,1,2,2", 8}, {Ensemble::HaarSp, "1,2,1*,2*", 8},
        {Ensemble::HaarSp, "1,1,1*,1", 8},
    };
    REQUIRE(cases.size() == 40);
    int ok = 0;
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        const Word w = parse_word(c.w);
        double exact = 0;
        switch (c.e) {
        case Ensemble::GUE: exact = Rational(word_polynomial(Gaussian::GUE, w).poly(Rational(1, c.N))).get_d(); break;
        case Ensemble::GOE: exact = Rational(word_polynomial(Gaussian::GOE, w).poly(Rational(1, c.N))).get_d(); break;
        case Ensemble::GSE: exact = gse_expectation(w, c.N).get_d(); break;
        case Ensemble::HaarU: exact = unitary_word_moment(w, c.N).get_d(); break;
        case Ensemble::HaarO: exact = orthogonal_word_moment(w, c.N).get_d(); break;
        case Ensemble::HaarSp: exact = symplectic_expectation(w, c.N).get_d(); break;
        default: break;
        }
        const auto m = word_moments_mc(c.e, max_generator(w), c.N, {w}, 4000, seed++);
        const bool good = within(m[0], exact);
        ok += good;
        if (!good)
            MESSAGE(ensemble_name(c.e) << " " << c.w << " N=" << c.N << " mc=" << m[0].mean << " se="
                                       << m[0].standard_error << " exact=" << exact);
    }
    CHECK(ok >= 38);
}

TEST_CASE("assemble, norms and trace statistics")
{
    Stream s(9, 0, 0);
    const CMat g = sample_gaussian(Ensemble::GUE, 5, s);
    const CMat id = assemble(NCPoly::identity(1, 3), {g});
    CHECK((id - CMat::Identity(15, 15)).cwiseAbs().maxCoeff() == 0.0);
    const CMat blk = assemble(NCPoly::monomial(1, parse_word("1"), CMatrix::identity(2)), {g});
    CHECK((blk.block(0, 0, 5, 5) - g).cwiseAbs().maxCoeff() == 0.0);
    CHECK((blk.block(5, 5, 5, 5) - g).cwiseAbs().maxCoeff() == 0.0);
    CHECK(blk.block(0, 5, 5, 5).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(assemble(x1(), {g, g}), Error);

    NCPoly p(2, 2);
    CMatrix a(2);
    a(0, 1) = CRational(Rational(1), Rational(2));
    p.add_term(parse_word("1,2"), a);
    p.add_term(parse_word("2,1"), a.adjoint());
    p.add_term({}, CMatrix::identity(2));
    REQUIRE(p.is_self_adjoint(FreeModel::Semicircular));
    const CMat X = assemble(p, {g, sample_gaussian(Ensemble::GUE, 5, s)});
    CHECK(self_adjoint_defect(X) <= 1e-13);

    CMat d = CMat::Zero(4, 4);
    d.diagonal() << 1.0, -3.5, 2.0, 0.5;
    CHECK(op_norm_value(d) == doctest::Approx(3.5));
    CHECK(trace_stat(Poly({0, 0, 1}), d) == doctest::Approx((1 + 12.25 + 4 + 0.25) / 4));
    CMat bad = d;
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(op_norm(bad), Error);

    const CMat big = sample_gaussian(Ensemble::GUE, 300, s);
    NormOptions lz;
    lz.dense_cap = 100;
    const NormResult it = op_norm(big, lz);
    CHECK(it.iterative);
    CHECK(it.norm == doctest::Approx(op_norm_value(big)).epsilon(1e-6));
    CHECK(trace_stat(Poly({0, 0, 1}), big) == doctest::Approx((big * big).trace().real() / 300).epsilon(1e-10));
}

TEST_CASE("GUE edge and tails")
{
    SampleSpec spec;
    spec.ensemble = Ensemble::GUE;
    spec.P = x1();
    spec.N = 200;
    spec.replicas = 1000;
    spec.seed = 77;
    const SampleRun run = run_samples(spec);
    const long inside = std::count_if(run.norms.begin(), run.norms.end(), [](double v) { return v >= 1.8 && v <= 2.3; });
    CHECK(inside >= 990);

    spec.N = 100;
    const EmpiricalStats far = tail_probability(spec, 2.0, 2.0);
    CHECK(far.tail_counts.begin()->second.hits == 0);
    CHECK(far.median >= far.min);
    CHECK(far.median <= far.max);

    // thresholds near the edge, so the counts are not all zero
    std::vector<double> freq;
    spec.replicas = 600;
    for (long N : {50, 100, 200}) {
        spec.N = N;
        const EmpiricalStats st = tail_probability(spec, 0.025, 2.0);
        freq.push_back(static_cast<double>(st.tail_counts.begin()->second.hits) / spec.replicas);
        const auto ci = st.tail_counts.begin()->second.ci;
        CHECK((ci.lo >= 0 && ci.hi <= 1 && ci.lo <= ci.hi));
    }
    CHECK(freq[0] > freq[1]);
    CHECK(freq[1] > freq[2]);
}

TEST_CASE("determinism and thread independence")
{
    SampleSpec spec;
    spec.ensemble = Ensemble::GOE;
    spec.P = x1() + NCPoly::letter(1, 1, {1, false});
    spec.N = 30;
    spec.replicas = 40;
    spec.seed = 5;
    spec.threads = 1;
    const SampleRun a = run_samples(spec, {{"x2", Poly({0, 0, 1})}});
    spec.threads = 3;
    const SampleRun b = run_samples(spec, {{"x2", Poly({0, 0, 1})}});
    CHECK(a.norms == b.norms);
    CHECK(a.stats == b.stats);
    std::ostringstream os;
    write_samples_csv(os, spec, a);
    CHECK(os.str().find("replica,N,ensemble,norm,stat_name,stat_value") != std::string::npos);
    CHECK(os.str().find("seed=5") != std::string::npos);
    const auto w = wilson_interval(0, 1000);
    CHECK(w.lo == 0.0);
    CHECK(w.hi == doctest::Approx(0.00383).epsilon(0.01));
    CHECK(wilson_interval(1000, 1000).hi == 1.0);
}

TEST_CASE("concentration probe")
{
    SampleSpec spec;
    spec.ensemble = Ensemble::GUE;
    spec.P = x1();
    spec.N = 40;
    spec.replicas = 1000;
    spec.seed = 31;
    const auto g = concentration_probe(spec, {0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3});
    for (std::size_t i = 1; i < g.deviations.size(); ++i)
        CHECK(g.deviations[i].hits <= g.deviations[i - 1].hits);
    CHECK(g.fitted_exponent < 0);

    spec.ensemble = Ensemble::HaarU;
    // two-generator Kesten operator: a soft edge at 2 sqrt 3
    spec.P = NCPoly::letter(2, 1, {1, false}) + NCPoly::letter(2, 1, {1, true}) + NCPoly::letter(2, 1, {2, false}) +
             NCPoly::letter(2, 1, {2, true});
    const auto rep = concentration_probe(spec, {0.0, 0.01, 0.02, 0.04, 0.08});
    // above/below the median are balanced
    for (std::size_t i = 0; i < rep.eps.size(); ++i) {
        const auto& up = rep.above[i].ci;
        const auto& dn = rep.below[i].ci;
        CHECK((up.lo <= dn.hi && dn.lo <= up.hi));
    }
    spec.replicas = 10;
    CHECK_THROWS_AS(concentration_probe(spec, {0.1}), Error);
}

TEST_CASE("Hayes tensor model")
{
    const auto m = hayes_sample(1, 6, 3, 0);
    REQUIRE(m.size() == 2);
    CHECK((m[0] * m[1] - m[1] * m[0]).cwiseAbs().maxCoeff() <= 1e-13);
    Stream s0(3, 0, 0), s1(3, 0, 1);
    const CMat g = sample_gaussian(Ensemble::GUE, 6, s0), gt = sample_gaussian(Ensemble::GUE, 6, s1);
    const std::complex<double> lhs = (m[0] * m[1]).trace() / 36.0;
    const std::complex<double> rhs = g.trace() / 6.0 * (gt.trace() / 6.0);
    CHECK(std::abs(lhs - rhs) <= 1e-14);
    CHECK_THROWS_AS(hayes_sample(1, 70, 1, 0), Error);

    SampleSpec spec;
    spec.ensemble = Ensemble::HayesGUE;
    spec.P = NCPoly::letter(2, 1, {1, false}) + NCPoly::letter(2, 1, {2, false});
    spec.N = 12;
    spec.replicas = 30;
    const SampleRun run = run_samples(spec);
    for (double v : run.norms)
        CHECK((v > 2.5 && v < 4.6));
}

TEST_CASE("word_moments_mc matches direct word traces")
{
    const std::vector<Word> words = {{{1, false}, {2, true}},
                                     {{1, false}, {2, true}, {1, true}},
                                     {{1, false}, {2, true}, {1, true}, {2, false}},
                                     {{2, true}, {2, false}, {1, false}},
                                     {{1, false}}};
    for (Ensemble e : {Ensemble::HaarU, Ensemble::GSE}) {
        const auto mc = word_moments_mc(e, 2, 5, words, 3, 11, 1);
        for (std::size_t k = 0; k < words.size(); ++k) {
            double s = 0;
            for (std::uint32_t rep = 0; rep < 3; ++rep)
                s += word_trace(words[k], sample_family(e, 2, 5, 11, rep)).real();
            CHECK(mc[k].mean == doctest::Approx(s / 3).epsilon(1e-12));
        }
    }
}
