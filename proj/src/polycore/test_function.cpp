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

#include "polycore/test_function.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace strongconv {

namespace {

double binom(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

double fact(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

// sum_{k <= t} (-1)^k C(n,k) (t-k)^p / p!, the (n-p)-th derivative of the CDF for p < n
double ih_sum(int n, double t, int p)
{
    double s = 0.0;
    const int top = std::min(n, static_cast<int>(std::floor(t)));
    for (int k = 0; k <= top; ++k) {
        const double term = binom(n, k) * std::pow(t - k, p);
        s += (k % 2 == 0) ? term : -term;
    }
    return s / fact(p);
}

} // namespace

double irwin_hall_derivative(int n, double t, int order)
{
    require(n >= 1 && order >= 0 && order <= n - 1, ErrorCode::Domain,
            "Irwin-Hall derivative order out of range");
    if (t <= 0.0)
        return 0.0;
    if (t >= n)
        return order == 0 ? 1.0 : 0.0;
    const int p = n - order;
    // evaluate on the left half; F(t) = 1 - F(n-t), F^{(k)}(t) = (-1)^{k+1} F^{(k)}(n-t)
    if (t > 0.5 * n) {
        const double mirrored = ih_sum(n, n - t, p);
        if (order == 0)
            return std::clamp(1.0 - mirrored, 0.0, 1.0);
        return (order % 2 == 1) ? mirrored : -mirrored;
    }
    const double v = ih_sum(n, t, p);
    return order == 0 ? std::clamp(v, 0.0, 1.0) : v;
}

TestFunction::TestFunction(int m, double radius, double rho, double eps, int nodes, double tol)
    : m_(m), boxes_(m + 2), radius_(radius), rho_(rho), eps_(eps)
{
    require(m >= 1, ErrorCode::Domain, "test function needs m >= 1");
    require(eps > 0, ErrorCode::Domain, "test function needs eps > 0");
    require(rho >= 0, ErrorCode::Domain, "test function needs rho >= 0");
    require(rho + eps < radius, ErrorCode::Domain, "test function needs rho + eps < K");
    width_ = eps / (2.0 * boxes_);
    centre_ = rho + 0.75 * eps;
    series_ = cheb_expand([this](double x) { return derivative(x, 0); }, radius, nodes, tol);
}

double TestFunction::derivative(double x, int order) const
{
    require(order >= 0 && order <= m_ + 1, ErrorCode::Domain, "test function derivative order out of range");
    const double t = (std::abs(x) - centre_) / width_ + 0.5 * boxes_;
    double v = irwin_hall_derivative(boxes_, t, order);
    if (order == 0)
        return v;
    v /= std::pow(width_, order);
    if (x < 0 && order % 2 == 1)
        v = -v;
    return v;
}

double TestFunction::theta_derivative(double theta, int order) const
{
    require(order >= 0 && order <= m_ + 1, ErrorCode::Domain, "test function derivative order out of range");
    const double x = radius_ * std::cos(theta);
    if (order == 0)
        return derivative(x, 0);
    // g^{(j)}(theta) = K cos(theta + j pi/2)
    std::vector<double> g(static_cast<std::size_t>(order) + 1);
    for (int j = 1; j <= order; ++j)
        g[static_cast<std::size_t>(j)] = radius_ * std::cos(theta + j * std::numbers::pi / 2.0);
    // Bell polynomials B[n][k]
    std::vector<std::vector<double>> bell(static_cast<std::size_t>(order) + 1,
                                          std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
    bell[0][0] = 1.0;
    for (int n = 1; n <= order; ++n)
        for (int k = 1; k <= n; ++k) {
            double s = 0.0;
            for (int i = 1; i <= n - k + 1; ++i)
                s += binom(n - 1, i - 1) * g[static_cast<std::size_t>(i)] *
                     bell[static_cast<std::size_t>(n - i)][static_cast<std::size_t>(k - 1)];
            bell[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = s;
        }
    double out = 0.0;
    for (int k = 1; k <= order; ++k)
        out += derivative(x, k) * bell[static_cast<std::size_t>(order)][static_cast<std::size_t>(k)];
    return out;
}

double TestFunction::derivative_envelope(int k) const
{
    return std::pow(8.0, k + 1) * std::pow(static_cast<double>(m_), k) * std::pow(radius_ / eps_, k + 1);
}

TestFunction build_test_function(int m, double radius, double rho, double eps)
{
    return TestFunction(m, radius, rho, eps);
}

} // namespace strongconv
