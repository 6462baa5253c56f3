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

#include "sampler/spectral.hpp"

#include "common/error.hpp"
#include "sampler/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace strongconv {

using cd = std::complex<double>;

namespace {

CMat letter_matrix(const Letter& l, const std::vector<CMat>& m)
{
    const CMat& a = m[static_cast<std::size_t>(l.gen - 1)];
    return l.star ? CMat(a.adjoint()) : a;
}

CMat word_matrix(const Word& w, const std::vector<CMat>& m, long n)
{
    if (w.empty())
        return CMat::Identity(n, n);
    CMat out = letter_matrix(w.front(), m);
    for (std::size_t i = 1; i < w.size(); ++i) {
        const Letter& l = w[i];
        const CMat& a = m[static_cast<std::size_t>(l.gen - 1)];
        out = l.star ? CMat(out * a.adjoint()) : CMat(out * a);
    }
    return out;
}

void check_family(int r, const std::vector<CMat>& m)
{
    require(static_cast<int>(m.size()) == r, ErrorCode::DimensionMismatch,
            "matrix count " + std::to_string(m.size()) + " differs from alphabet size " + std::to_string(r));
    for (const auto& a : m)
        require(a.rows() == m.front().rows() && a.cols() == a.rows(), ErrorCode::DimensionMismatch,
                "matrices must be square and of equal size");
}

} // namespace

CMat assemble(const NCPoly& P, const std::vector<CMat>& matrices)
{
    check_family(P.alphabet_size(), matrices);
    const long n = matrices.front().rows();
    const long D = P.dim();
    CMat out = CMat::Zero(D * n, D * n);
    for (const auto& [w, A] : P.terms()) {
        const CMat wm = word_matrix(w, matrices, n);
        for (long i = 0; i < D; ++i)
            for (long j = 0; j < D; ++j) {
                const cd a = A(static_cast<int>(i), static_cast<int>(j)).to_complex();
                if (a != cd(0, 0))
                    out.block(i * n, j * n, n, n) += a * wm;
            }
    }
    return out;
}

double self_adjoint_defect(const CMat& M)
{
    require(M.rows() == M.cols(), ErrorCode::DimensionMismatch, "matrix must be square");
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    return (M - M.adjoint()).cwiseAbs().maxCoeff() / scale;
}

namespace {

// Lanczos with full reorthogonalization; stops once both extreme Ritz values
// have settled to the tolerance.
NormResult lanczos_norm(const CMat& M, const NormOptions& opts)
{
    const long n = M.rows();
    const int kmax = static_cast<int>(std::min<long>(n, opts.max_iterations));
    Stream s(0x5eedULL, 0, 0);
    Eigen::VectorXcd v(n);
    for (long i = 0; i < n; ++i)
        v(i) = cd(s.normal(), s.normal());
    v.normalize();
    CMat basis(n, kmax);
    std::vector<double> alpha, beta;
    double prev = -1.0;
    NormResult res;
    res.iterative = true;
    for (int k = 0; k < kmax; ++k) {
        basis.col(k) = v;
        Eigen::VectorXcd w = M * v;
        const double a = v.dot(w).real();
        alpha.push_back(a);
        w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
        w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
        const double b = w.norm();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        const int m = k + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m)
                t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        es.compute(t, Eigen::EigenvaluesOnly);
        const double est = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(m - 1)));
        res.norm = est;
        res.iterations = m;
        if (b < 1e-12 * std::max(1.0, est))
            break;
        if (m >= opts.min_iterations && std::abs(est - prev) <= opts.tolerance * std::max(1.0, est))
            break;
        prev = est;
        beta.push_back(b);
        v = w / b;
    }
    return res;
}

} // namespace

NormResult op_norm(const CMat& M, const NormOptions& opts)
{
    if (self_adjoint_defect(M) > 1e-10)
        fail(ErrorCode::Domain, "op_norm needs a self-adjoint matrix");
    if (M.rows() == 0)
        return {};
    if (M.rows() <= opts.dense_cap) {
        Eigen::SelfAdjointEigenSolver<CMat> es(M, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        return {std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))), false, 0};
    }
    return lanczos_norm(M, opts);
}

double op_norm_value(const CMat& M)
{
    return op_norm(M).norm;
}

Eigen::VectorXd eigenvalues(const CMat& M)
{
    if (self_adjoint_defect(M) > 1e-10)
        fail(ErrorCode::Domain, "eigenvalues need a self-adjoint matrix");
    if (M.rows() > kDenseEigenCap)
        fail(ErrorCode::SizeCap, "dense spectrum limited to dimension " + std::to_string(kDenseEigenCap));
    Eigen::SelfAdjointEigenSolver<CMat> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double trace_stat(const std::function<double(double)>& h, const CMat& M)
{
    const Eigen::VectorXd ev = eigenvalues(M);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        s += h(ev(i));
    return ev.size() ? s / static_cast<double>(ev.size()) : 0.0;
}

double trace_stat(const Poly& h, const CMat& M)
{
    return trace_stat([&](double x) { return h.eval(x); }, M);
}

std::complex<double> word_trace(const Word& w, const std::vector<CMat>& matrices)
{
    require(!matrices.empty(), ErrorCode::DimensionMismatch, "no matrices given");
    require(max_generator(w) <= static_cast<int>(matrices.size()), ErrorCode::DimensionMismatch,
            "word uses more generators than matrices");
    const long n = matrices.front().rows();
    return word_matrix(w, matrices, n).trace() / static_cast<double>(n);
}

} // namespace strongconv
