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

#include "polycore/chebyshev.hpp"

namespace strongconv {

/// Smooth even step: 0 on |x| <= rho + eps/2, 1 on |x| >= rho + eps.
/// The transition is the CDF of a sum of m+2 uniform boxes of width
/// eps/(2(m+2)), so chi is C^{m+1} and piecewise polynomial.
class TestFunction {
public:
    TestFunction(int m, double radius, double rho, double eps,
                 int nodes = kDefaultChebNodes, double tol = kDefaultChebDropTol);

    int smoothness() const { return m_; }
    double radius() const { return radius_; }
    double rho() const { return rho_; }
    double eps() const { return eps_; }
    const ChebSeries& series() const { return series_; }

    double operator()(double x) const { return derivative(x, 0); }
    /// d^k chi / dx^k, valid for k <= m+1.
    double derivative(double x, int order) const;
    /// d^k/dtheta^k of chi(K cos theta) by Faa di Bruno.
    double theta_derivative(double theta, int order) const;
    /// 8^{k+1} m^k (K/eps)^{k+1}
    double derivative_envelope(int k) const;

private:
    int m_;
    int boxes_;
    double radius_, rho_, eps_;
    double centre_, width_;
    ChebSeries series_;
};

TestFunction build_test_function(int m, double radius, double rho, double eps);

/// k-th derivative of the Irwin-Hall CDF for n boxes at t (k = 0 gives the CDF).
double irwin_hall_derivative(int n, double t, int order);

} // namespace strongconv
