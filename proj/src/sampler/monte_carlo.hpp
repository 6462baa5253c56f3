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

#include "common/json_io.hpp"
#include "ncpoly/ncpoly.hpp"
#include "polycore/poly.hpp"
#include "sampler/ensembles.hpp"
#include "sampler/spectral.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace strongconv {

struct SampleSpec {
    Ensemble ensemble = Ensemble::GUE;
    long N = 10;
    NCPoly P;
    int replicas = 100;
    std::uint64_t seed = 1;
    int threads = 0; // 0: hardware concurrency
    NormOptions norm;

    Json to_json() const;
};

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval, 95% by default.
WilsonInterval wilson_interval(long hits, long n, double z = 1.959963984540054);

struct TailCount {
    long hits = 0;
    long replicas = 0;
    WilsonInterval ci;
};

struct EmpiricalStats {
    long count = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double standard_error = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::map<double, double> quantiles; // 0.05 .. 0.999
    std::map<double, TailCount> tail_counts; // threshold -> hits

    Json to_json() const;
};

/// Pairwise (cascade) summation in the given order.
double pairwise_sum(const std::vector<double>& v);

EmpiricalStats summarize(const std::vector<double>& values, const std::vector<double>& thresholds = {});

struct SampleRun {
    std::vector<double> norms;                           // by replica
    std::map<std::string, std::vector<double>> stats;    // tr h(X) by replica
    bool iterative = false;                              // any Lanczos norm
};

/// Runs all replicas; the named trace statistics are normalized traces of h(X).
SampleRun run_samples(const SampleSpec& spec, const std::map<std::string, Poly>& trace_stats = {});

/// replica,N,ensemble,norm,stat_name,stat_value (one row per statistic, or a
/// single row with empty statistic); the seed goes in a leading comment line.
void write_samples_csv(std::ostream& os, const SampleSpec& spec, const SampleRun& run);

struct MomentEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    long replicas = 0;
};

/// Monte Carlo estimate of Re E tr w over independent copies; one draw per
/// replica is shared by all words.
std::vector<MomentEstimate> word_moments_mc(Ensemble e, int r, long N, const std::vector<Word>& words,
                                            int replicas, std::uint64_t seed, int threads = 0);

/// Frequency of ||X^N|| >= (1 + eps) norm_target.
EmpiricalStats tail_probability(const SampleSpec& spec, double eps, double norm_target);

struct ConcentrationReport {
    double median = 0.0;
    std::vector<double> eps;
    std::vector<TailCount> deviations;   // |norm - median| > eps
    std::vector<TailCount> above;        // norm - median > eps
    std::vector<TailCount> below;        // median - norm > eps
    double fitted_exponent = 0.0;        // slope of log frequency against eps^2
    int fit_points = 0;

    Json to_json() const;
};

ConcentrationReport concentration_probe(const SampleSpec& spec, const std::vector<double>& eps_grid);

/// Least-squares slope and intercept of y on x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace strongconv
