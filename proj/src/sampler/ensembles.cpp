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

#include "sampler/ensembles.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

namespace strongconv {

using cd = std::complex<double>;

const char* ensemble_name(Ensemble e)
{
    switch (e) {
    case Ensemble::GUE: return "gue";
    case Ensemble::GOE: return "goe";
    case Ensemble::GSE: return "gse";
    case Ensemble::HaarU: return "haar-u";
    case Ensemble::HaarO: return "haar-o";
    case Ensemble::HaarSp: return "haar-sp";
    case Ensemble::HayesGUE: return "hayes";
    }
    return "?";
}

Ensemble parse_ensemble(const std::string& name)
{
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    std::replace(s.begin(), s.end(), '_', '-');
    if (s == "gue")
        return Ensemble::GUE;
    if (s == "goe")
        return Ensemble::GOE;
    if (s == "gse")
        return Ensemble::GSE;
    if (s == "haar-u" || s == "haaru" || s == "unitary" || s == "u")
        return Ensemble::HaarU;
    if (s == "haar-o" || s == "haaro" || s == "orthogonal" || s == "o")
        return Ensemble::HaarO;
    if (s == "haar-sp" || s == "haarsp" || s == "symplectic" || s == "sp")
        return Ensemble::HaarSp;
    if (s == "hayes" || s == "hayes-gue" || s == "hayesgue")
        return Ensemble::HayesGUE;
    fail(ErrorCode::Parse, "unknown ensemble '" + name + "'");
}

bool is_gaussian(Ensemble e)
{
    return e == Ensemble::GUE || e == Ensemble::GOE || e == Ensemble::GSE || e == Ensemble::HayesGUE;
}

long matrix_dim(Ensemble e, long N)
{
    switch (e) {
    case Ensemble::GSE:
    case Ensemble::HaarSp: return 2 * N;
    case Ensemble::HayesGUE: return N * N;
    default: return N;
    }
}

namespace {

// 2x2 complex block of the quaternion a + b i + c j + d k
void put_quaternion(CMat& m, long i, long j, double a, double b, double c, double d)
{
    m(2 * i, 2 * j) = cd(a, b);
    m(2 * i, 2 * j + 1) = cd(c, d);
    m(2 * i + 1, 2 * j) = cd(-c, d);
    m(2 * i + 1, 2 * j + 1) = cd(a, -b);
}

} // namespace

CMat sample_gaussian(Ensemble kind, long N, Stream& s)
{
    require(N >= 1, ErrorCode::Domain, "N must be >= 1");
    const double n = static_cast<double>(N);
    switch (kind) {
    case Ensemble::GUE: {
        CMat m(N, N);
        const double sd_diag = std::sqrt(1.0 / n), sd_off = std::sqrt(0.5 / n);
        for (long i = 0; i < N; ++i) {
            m(i, i) = sd_diag * s.normal();
            for (long j = i + 1; j < N; ++j) {
                const double re = sd_off * s.normal();
                const double im = sd_off * s.normal();
                m(i, j) = cd(re, im);
                m(j, i) = cd(re, -im);
            }
        }
        return m;
    }
    case Ensemble::GOE: {
        CMat m(N, N);
        const double sd_diag = std::sqrt(2.0 / n), sd_off = std::sqrt(1.0 / n);
        for (long i = 0; i < N; ++i) {
            m(i, i) = sd_diag * s.normal();
            for (long j = i + 1; j < N; ++j) {
                const double v = sd_off * s.normal();
                m(i, j) = v;
                m(j, i) = v;
            }
        }
        return m;
    }
    case Ensemble::GSE: {
        CMat m(2 * N, 2 * N);
        const double sd_diag = std::sqrt(0.5 / n), sd_off = std::sqrt(0.25 / n);
        for (long i = 0; i < N; ++i) {
            put_quaternion(m, i, i, sd_diag * s.normal(), 0, 0, 0);
            for (long j = i + 1; j < N; ++j) {
                const double a = sd_off * s.normal(), b = sd_off * s.normal();
                const double c = sd_off * s.normal(), d = sd_off * s.normal();
                put_quaternion(m, i, j, a, b, c, d);
                put_quaternion(m, j, i, a, -b, -c, -d);
            }
        }
        return m;
    }
    default: fail(ErrorCode::Domain, std::string("not a Gaussian ensemble: ") + ensemble_name(kind));
    }
}

namespace {

// Householder QR with the R diagonal made positive, retried on breakdown.
CMat haar_from_ginibre(const std::function<CMat()>& ginibre)
{
    for (int attempt = 0; attempt < 8; ++attempt) {
        const CMat z = ginibre();
        Eigen::HouseholderQR<CMat> qr(z);
        CMat q = qr.householderQ();
        const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
        bool ok = true;
        for (Eigen::Index i = 0; i < z.cols(); ++i) {
            const double a = std::abs(r(i, i));
            if (!(a > 1e-300)) {
                ok = false;
                break;
            }
            q.col(i) *= r(i, i) / a;
        }
        if (ok)
            return q;
    }
    fail(ErrorCode::Evaluation, "QR breakdown while sampling a Haar matrix");
}

// Quaternionic Gram-Schmidt, twice, on 2x2-block columns.
CMat haar_symplectic(long N, Stream& s)
{
    CMat m(2 * N, 2 * N);
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
            put_quaternion(m, i, j, s.normal(), s.normal(), s.normal(), s.normal());
    for (long k = 0; k < N; ++k) {
        auto col = m.middleCols(2 * k, 2);
        for (int pass = 0; pass < 2; ++pass)
            for (long j = 0; j < k; ++j) {
                const auto qj = m.middleCols(2 * j, 2);
                const Eigen::Matrix2cd c = qj.adjoint() * col;
                col -= qj * c;
            }
        const double norm = std::sqrt((col.adjoint() * col).trace().real() / 2.0);
        if (!(norm > 1e-300))
            fail(ErrorCode::Evaluation, "Gram-Schmidt breakdown while sampling Sp(N)");
        col /= norm;
    }
    return m;
}

} // namespace

CMat sample_haar(Ensemble kind, long N, Stream& s)
{
    require(N >= 1, ErrorCode::Domain, "N must be >= 1");
    switch (kind) {
    case Ensemble::HaarU:
        return haar_from_ginibre([&] {
            CMat z(N, N);
            const double sd = std::sqrt(0.5);
            for (long i = 0; i < N; ++i)
                for (long j = 0; j < N; ++j)
                    z(i, j) = cd(sd * s.normal(), sd * s.normal());
            return z;
        });
    case Ensemble::HaarO: {
        Eigen::MatrixXd z(N, N);
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j)
                z(i, j) = s.normal();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
        Eigen::MatrixXd q = qr.householderQ();
        for (long i = 0; i < N; ++i)
            if (qr.matrixQR()(i, i) < 0)
                q.col(i) *= -1.0;
        return q.cast<cd>();
    }
    case Ensemble::HaarSp: return haar_symplectic(N, s);
    default: fail(ErrorCode::Domain, std::string("not a Haar ensemble: ") + ensemble_name(kind));
    }
}

std::vector<CMat> hayes_sample(int r, long N, std::uint64_t seed, std::uint32_t replica)
{
    require(r >= 1 && N >= 1, ErrorCode::Domain, "hayes_sample needs r, N >= 1");
    if (N * N > kHayesDimCap)
        fail(ErrorCode::SizeCap, "Hayes dimension N^2 = " + std::to_string(N * N) + " exceeds cap " +
                                     std::to_string(kHayesDimCap));
    std::vector<CMat> out;
    for (int leg = 0; leg < 2; ++leg)
        for (int i = 0; i < r; ++i) {
            Stream st(seed, replica, static_cast<std::uint32_t>(leg * r + i));
            const CMat g = sample_gaussian(Ensemble::GUE, N, st);
            CMat k = CMat::Zero(N * N, N * N);
            for (long a = 0; a < N; ++a)
                for (long b = 0; b < N; ++b) {
                    if (leg == 0)
                        k.block(a * N, b * N, N, N).diagonal().setConstant(g(a, b));
                    else if (a == b)
                        k.block(a * N, b * N, N, N) = g;
                }
            out.push_back(std::move(k));
        }
    return out;
}

std::vector<CMat> sample_family(Ensemble e, int r, long N, std::uint64_t seed, std::uint32_t replica)
{
    require(r >= 1, ErrorCode::Domain, "alphabet size must be >= 1");
    if (e == Ensemble::HayesGUE) {
        require(r % 2 == 0, ErrorCode::DimensionMismatch, "Hayes polynomials use an even alphabet (2r letters)");
        return hayes_sample(r / 2, N, seed, replica);
    }
    std::vector<CMat> out;
    for (int i = 0; i < r; ++i) {
        Stream st(seed, replica, static_cast<std::uint32_t>(i));
        out.push_back(is_gaussian(e) ? sample_gaussian(e, N, st) : sample_haar(e, N, st));
    }
    return out;
}

} // namespace strongconv
