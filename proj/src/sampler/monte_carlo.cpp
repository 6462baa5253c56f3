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

#include "sampler/monte_carlo.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

namespace strongconv {

namespace {

// Runs body(i) for i in [0, n); each index is handled exactly once.
void parallel_for(long n, int threads, const std::function<void(long)>& body)
{
    int t = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    t = static_cast<int>(std::min<long>(t, n));
    if (t <= 1) {
        for (long i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int k = 0; k < t; ++k)
        pool.emplace_back([&] {
            for (long i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err)
                        err = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

double quantile_sorted(const std::vector<double>& s, double p)
{
    if (s.empty())
        return 0.0;
    const double h = (static_cast<double>(s.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

Json tail_json(const TailCount& t)
{
    return Json{{"hits", t.hits}, {"replicas", t.replicas}, {"wilson95", Json::array({t.ci.lo, t.ci.hi})}};
}

TailCount make_count(long hits, long n)
{
    return TailCount{hits, n, wilson_interval(hits, n)};
}

void check_spec(const SampleSpec& spec)
{
    require(spec.replicas >= 1, ErrorCode::Domain, "replicas must be >= 1");
    require(spec.N >= 1, ErrorCode::Domain, "N must be >= 1");
    if (!spec.P.is_self_adjoint(spec.ensemble == Ensemble::HaarU || spec.ensemble == Ensemble::HaarO ||
                                        spec.ensemble == Ensemble::HaarSp
                                    ? FreeModel::HaarUnitary
                                    : FreeModel::Semicircular))
        fail(ErrorCode::NotSelfAdjoint, "P must be self-adjoint for norm sampling");
}

} // namespace

Json SampleSpec::to_json() const
{
    return Json{{"ensemble", ensemble_name(ensemble)},
                {"N", N},
                {"replicas", replicas},
                {"seed", seed},
                {"P", P.to_json()}};
}

WilsonInterval wilson_interval(long hits, long n, double z)
{
    require(n >= 1 && hits >= 0 && hits <= n, ErrorCode::Domain, "Wilson interval needs 0 <= hits <= n, n >= 1");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
    return {hits == 0 ? 0.0 : std::max(0.0, centre - half), hits == n ? 1.0 : std::min(1.0, centre + half)};
}

double pairwise_sum(const std::vector<double>& v)
{
    std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t lo, std::size_t hi) -> double {
        if (hi - lo <= 8) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i)
                s += v[i];
            return s;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return rec(0, v.size());
}

EmpiricalStats summarize(const std::vector<double>& values, const std::vector<double>& thresholds)
{
    EmpiricalStats st;
    st.count = static_cast<long>(values.size());
    if (values.empty())
        return st;
    const double n = static_cast<double>(values.size());
    st.mean = pairwise_sum(values) / n;
    std::vector<double> dev(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        dev[i] = (values[i] - st.mean) * (values[i] - st.mean);
    st.variance = values.size() > 1 ? pairwise_sum(dev) / (n - 1) : 0.0;
    st.standard_error = std::sqrt(st.variance / n);
    std::vector<double> s = values;
    std::sort(s.begin(), s.end());
    st.min = s.front();
    st.max = s.back();
    st.median = quantile_sorted(s, 0.5);
    for (double p : {0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 0.999})
        st.quantiles[p] = quantile_sorted(s, p);
    for (double t : thresholds) {
        const long hits = static_cast<long>(std::count_if(values.begin(), values.end(), [&](double v) { return v >= t; }));
        st.tail_counts[t] = make_count(hits, st.count);
    }
    return st;
}

Json EmpiricalStats::to_json() const
{
    Json q = Json::object();
    for (const auto& [p, v] : quantiles)
        q[std::to_string(p).substr(0, 5)] = v;
    Json tails = Json::array();
    for (const auto& [t, c] : tail_counts) {
        Json e = tail_json(c);
        e["threshold"] = t;
        tails.push_back(e);
    }
    return Json{{"count", count},     {"mean", mean},     {"variance", variance},
                {"standard_error", standard_error}, {"median", median}, {"min", min},
                {"max", max},         {"quantiles", q},   {"tail_counts", tails}};
}

SampleRun run_samples(const SampleSpec& spec, const std::map<std::string, Poly>& trace_stats)
{
    check_spec(spec);
    const long dim = matrix_dim(spec.ensemble, spec.N) * spec.P.dim();
    if (!trace_stats.empty() && dim > kDenseEigenCap)
        fail(ErrorCode::SizeCap, "trace statistics need a dense spectrum (dimension " + std::to_string(dim) + ")");
    const auto reps = static_cast<std::size_t>(spec.replicas);
    SampleRun run;
    run.norms.assign(reps, 0.0);
    for (const auto& [name, h] : trace_stats)
        run.stats[name].assign(reps, 0.0);
    std::vector<char> iterative(reps, 0);
    parallel_for(spec.replicas, spec.threads, [&](long rep) {
        const auto i = static_cast<std::size_t>(rep);
        const auto mats = sample_family(spec.ensemble, spec.P.alphabet_size(), spec.N, spec.seed,
                                        static_cast<std::uint32_t>(rep));
        const CMat X = assemble(spec.P, mats);
        if (trace_stats.empty()) {
            const NormResult nr = op_norm(X, spec.norm);
            run.norms[i] = nr.norm;
            iterative[i] = nr.iterative;
            return;
        }
        const Eigen::VectorXd ev = eigenvalues(X);
        run.norms[i] = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        for (const auto& [name, h] : trace_stats) {
            double s = 0.0;
            for (Eigen::Index k = 0; k < ev.size(); ++k)
                s += h.eval(ev(k));
            run.stats.at(name)[i] = s / static_cast<double>(ev.size());
        }
    });
    run.iterative = std::any_of(iterative.begin(), iterative.end(), [](char c) { return c != 0; });
    return run;
}

void write_samples_csv(std::ostream& os, const SampleSpec& spec, const SampleRun& run)
{
    os << "# seed=" << spec.seed << (run.iterative ? " norm=lanczos" : " norm=dense") << "\n";
    os << "replica,N,ensemble,norm,stat_name,stat_value\n";
    os.precision(17);
    for (std::size_t i = 0; i < run.norms.size(); ++i) {
        const std::string prefix = std::to_string(i) + "," + std::to_string(spec.N) + "," +
                                   ensemble_name(spec.ensemble) + ",";
        if (run.stats.empty()) {
            os << prefix << run.norms[i] << ",,\n";
            continue;
        }
        for (const auto& [name, vals] : run.stats)
            os << prefix << run.norms[i] << "," << name << "," << vals[i] << "\n";
    }
}

std::vector<MomentEstimate> word_moments_mc(Ensemble e, int r, long N, const std::vector<Word>& words,
                                            int replicas, std::uint64_t seed, int threads)
{
    require(replicas >= 2, ErrorCode::Domain, "need at least two replicas");
    for (const auto& w : words)
        require(max_generator(w) <= r, ErrorCode::DimensionMismatch, "word uses more generators than r");
    const auto reps = static_cast<std::size_t>(replicas);
    std::vector<std::vector<double>> vals(words.size(), std::vector<double>(reps, 0.0));
    parallel_for(replicas, threads, [&](long rep) {
        const auto mats = sample_family(e, r, N, seed, static_cast<std::uint32_t>(rep));
        // prefix products are shared between words; the last letter only enters through a trace
        std::map<Word, CMat> prefix;
        const auto prefix_matrix = [&](const Word& w, auto&& self) -> const CMat& {
            auto it = prefix.find(w);
            if (it != prefix.end())
                return it->second;
            const Letter& l = w.back();
            const CMat& a = mats[static_cast<std::size_t>(l.gen - 1)];
            CMat m;
            if (w.size() == 1) {
                m = l.star ? CMat(a.adjoint()) : a;
            } else {
                const CMat& head = self(Word(w.begin(), w.end() - 1), self);
                m = l.star ? CMat(head * a.adjoint()) : CMat(head * a);
            }
            return prefix.emplace(w, std::move(m)).first->second;
        };
        for (std::size_t k = 0; k < words.size(); ++k) {
            const Word& w = words[k];
            if (w.size() < 2) {
                vals[k][static_cast<std::size_t>(rep)] = word_trace(w, mats).real();
                continue;
            }
            const CMat& head = prefix_matrix(Word(w.begin(), w.end() - 1), prefix_matrix);
            const CMat& a = mats[static_cast<std::size_t>(w.back().gen - 1)];
            // tr(H A) = sum H_ij A_ji, tr(H A^*) = sum H_ij conj(A_ij)
            const std::complex<double> t =
                w.back().star ? head.cwiseProduct(a.conjugate()).sum() : head.cwiseProduct(a.transpose()).sum();
            vals[k][static_cast<std::size_t>(rep)] = t.real() / static_cast<double>(head.rows());
        }
    });
    std::vector<MomentEstimate> out;
    for (const auto& v : vals) {
        const EmpiricalStats st = summarize(v);
        out.push_back({st.mean, st.standard_error, st.count});
    }
    return out;
}

EmpiricalStats tail_probability(const SampleSpec& spec, double eps, double norm_target)
{
    require(eps >= 0 && norm_target > 0, ErrorCode::Domain, "tail probability needs eps >= 0, target > 0");
    const SampleRun run = run_samples(spec);
    return summarize(run.norms, {(1.0 + eps) * norm_target});
}

std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size() && x.size() >= 2, ErrorCode::Domain, "linear fit needs two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    require(sxx > 0, ErrorCode::Domain, "linear fit needs distinct x values");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

ConcentrationReport concentration_probe(const SampleSpec& spec, const std::vector<double>& eps_grid)
{
    require(spec.replicas >= 1000, ErrorCode::Domain, "concentration probe needs >= 1000 replicas");
    std::vector<double> grid = eps_grid;
    std::sort(grid.begin(), grid.end());
    const SampleRun run = run_samples(spec);
    ConcentrationReport rep;
    rep.median = summarize(run.norms).median;
    rep.eps = grid;
    const long n = static_cast<long>(run.norms.size());
    std::vector<double> fx, fy;
    for (double e : grid) {
        long dev = 0, up = 0, down = 0;
        for (double v : run.norms) {
            dev += std::abs(v - rep.median) > e;
            up += v - rep.median > e;
            down += rep.median - v > e;
        }
        rep.deviations.push_back(make_count(dev, n));
        rep.above.push_back(make_count(up, n));
        rep.below.push_back(make_count(down, n));
        if (dev > 0 && dev < n) {
            fx.push_back(e * e);
            fy.push_back(std::log(static_cast<double>(dev) / static_cast<double>(n)));
        }
    }
    rep.fit_points = static_cast<int>(fx.size());
    if (fx.size() >= 2)
        rep.fitted_exponent = linear_fit(fx, fy).first;
    return rep;
}

Json ConcentrationReport::to_json() const
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < eps.size(); ++i)
        rows.push_back(Json{{"eps", eps[i]},
                            {"deviation", tail_json(deviations[i])},
                            {"above", tail_json(above[i])},
                            {"below", tail_json(below[i])}});
    return Json{{"median", median}, {"rows", rows}, {"fitted_exponent", fitted_exponent}, {"fit_points", fit_points}};
}

} // namespace strongconv
