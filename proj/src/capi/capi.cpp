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

#include "strongconv/strongconv.h"

#include "cli/config.hpp"
#include "cli/experiment.hpp"
#include "cli/report.hpp"
#include "cli/verify.hpp"
#include "common/error.hpp"
#include "expansion/expansion.hpp"
#include "genus/genus.hpp"
#include "interp/interp.hpp"
#include "ncpoly/free_moments.hpp"
#include "polycore/chebyshev.hpp"
#include "sampler/monte_carlo.hpp"
#include "weingarten/psi.hpp"
#include "weingarten/symmetric_group.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <sstream>

using namespace strongconv;

struct sc_session {
    std::uint64_t seed = 1;
    bool seed_set = false;
    int threads = 0;
    std::string cache;
};

struct sc_poly {
    NCPoly p;
};

namespace {

thread_local std::string g_last_error;

sc_status from_code(ErrorCode c)
{
    return static_cast<sc_status>(static_cast<int>(c));
}

template <class F>
sc_status guarded(F&& body)
{
    g_last_error.clear();
    try {
        body();
        return SC_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return from_code(e.code());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return SC_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SC_ERR_INTERNAL;
    }
}

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(const Json& j, char** out)
{
    *out = dup(j.dump(2));
}

Json request_of(const char* text)
{
    if (!text || !*text)
        return Json::object();
    Json j = parse_json(text, "request");
    require(j.is_object(), ErrorCode::Parse, "request must be a JSON object");
    return j;
}

Poly h_of(const Json& req)
{
    if (!req.contains("h"))
        return Poly::x();
    const Json& h = req.at("h");
    if (h.is_string())
        return parse_poly_coeffs(h.get<std::string>());
    return Poly::from_json(h);
}

template <class T>
T get_or(const Json& req, const char* key, T dflt)
{
    return req.contains(key) ? req.at(key).get<T>() : dflt;
}

} // namespace

extern "C" {

const char* sc_version(void)
{
    return "0.1.0";
}

const char* sc_status_name(sc_status s)
{
    switch (s) {
    case SC_OK: return "ok";
    case SC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SC_ERR_INTERNAL: return "internal";
    default: break;
    }
    if (s >= SC_ERR_DOMAIN && s <= SC_ERR_EVALUATION)
        return error_code_name(static_cast<ErrorCode>(s));
    return "unknown";
}

const char* sc_last_error(void)
{
    return g_last_error.c_str();
}

void sc_string_free(char* s)
{
    std::free(s);
}

sc_status sc_session_create(sc_session** out)
{
    if (!out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = new sc_session(); });
}

void sc_session_destroy(sc_session* s)
{
    delete s;
}

sc_status sc_session_set_seed(sc_session* s, uint64_t seed)
{
    if (!s)
        return SC_ERR_INVALID_ARGUMENT;
    s->seed = seed;
    s->seed_set = true;
    return SC_OK;
}

sc_status sc_session_set_threads(sc_session* s, int threads)
{
    if (!s || threads < 0)
        return SC_ERR_INVALID_ARGUMENT;
    s->threads = threads;
    return SC_OK;
}

sc_status sc_session_set_cache(sc_session* s, const char* path)
{
    if (!s || !path)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        s->cache = path;
        load_character_cache(s->cache);
    });
}

sc_status sc_session_save_cache(sc_session* s)
{
    if (!s)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        if (!s->cache.empty())
            save_character_cache(s->cache);
    });
}

sc_status sc_poly_from_json(const char* json, sc_poly** out)
{
    if (!json || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        NCPoly p;
        try {
            p = NCPoly::from_json(parse_json(json, "polynomial"));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::Parse, std::string("polynomial: ") + e.what());
        }
        *out = new sc_poly{std::move(p)};
    });
}

sc_status sc_poly_load(const char* path, sc_poly** out)
{
    if (!path || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = new sc_poly{load_ncpoly_file(path)}; });
}

sc_status sc_poly_to_json(const sc_poly* p, char** out)
{
    if (!p || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] { emit(p->p.to_json(), out); });
}

void sc_poly_free(sc_poly* p)
{
    delete p;
}

sc_status sc_moments(sc_session* s, const sc_poly* p, const char* request, char** out)
{
    if (!s || !p || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Json req = request_of(request);
        const std::string ens = get_or<std::string>(req, "ensemble", "gue");
        const Poly h = h_of(req);
        const bool has_n = req.contains("N");
        const long n = has_n ? req.at("N").get<long>() : 0;
        Json res{{"ensemble", ens}, {"h", h.to_json()}};
        if (ens == "free" || ens == "free-haar") {
            const FreeModel m = ens == "free" ? FreeModel::Semicircular : FreeModel::HaarUnitary;
            res["value"] = to_fraction_string(free_spectral_moment(p->p, h, m));
        } else if (ens == "gue" || ens == "goe" || ens == "gse") {
            const Gaussian g = ens == "gue" ? Gaussian::GUE : Gaussian::GOE;
            const GenusPoly phi = spectral_statistic_poly(g, p->p, h);
            res["phi"] = phi.poly.to_json();
            res["variable"] = ens == "gse" ? "x = -1/(2N)" : "x = 1/N";
            if (has_n) {
                require(n >= 1, ErrorCode::Domain, "N must be >= 1");
                const Rational x = ens == "gse" ? Rational(-1, 2 * n) : Rational(1, n);
                res["N"] = n;
                res["value"] = to_fraction_string(phi.poly(x));
            }
        } else if (ens == "haar-u" || ens == "haar-o" || ens == "haar-sp") {
            require(has_n, ErrorCode::Domain, "compact ensembles need N");
            Rational v = ens == "haar-sp" ? symplectic_spectral(p->p, h, n)
                                          : compact_expectation(p->p, h,
                                                                ens == "haar-u" ? CompactGroup::Unitary
                                                                                : CompactGroup::Orthogonal,
                                                                n);
            res["N"] = n;
            res["value"] = to_fraction_string(v);
        } else {
            fail(ErrorCode::Parse, "unknown ensemble '" + ens + "'");
        }
        emit(res, out);
    });
}

sc_status sc_psi(sc_session* s, const sc_poly* p, const char* request, char** out)
{
    if (!s || !p || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Json req = request_of(request);
        const std::string g = get_or<std::string>(req, "group", "u");
        CompactGroup grp;
        if (g == "u" || g == "unitary")
            grp = CompactGroup::Unitary;
        else if (g == "o" || g == "orthogonal")
            grp = CompactGroup::Orthogonal;
        else
            fail(ErrorCode::Parse, "unknown group '" + g + "' (u, o)");
        emit(reconstruct_psi(p->p, h_of(req), grp).to_json(), out);
    });
}

sc_status sc_expand(sc_session* s, const sc_poly* p, const char* request, char** out)
{
    if (!s || !p || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Json req = request_of(request);
        const ExpansionEnsemble e = parse_expansion_ensemble(get_or<std::string>(req, "ensemble", "gue"));
        if (req.contains("support")) {
            const Json& sp = req.at("support");
            SupportOptions opts;
            opts.p_max = get_or<int>(sp, "p_max", opts.p_max);
            emit(support_test(e, p->p, get_or<double>(sp, "eps", 0.2), get_or<int>(sp, "k_max", 3), opts).to_json(),
                 out);
            return;
        }
        emit(expansion_coeffs(e, p->p, h_of(req), get_or<int>(req, "m", 3)).to_json(), out);
    });
}

sc_status sc_interp_check(sc_session* s, const char* request, char** out)
{
    if (!s || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Json req = request_of(request);
        if (req.contains("optimality")) {
            const int q = req.at("optimality").get<int>();
            require(q >= 1, ErrorCode::Domain, "q must be >= 1");
            const Poly h = optimality_example(q);
            bool bounded = true;
            for (int N = 1; N <= 10 * q; ++N)
                bounded = bounded && abs(h(Rational(1, N))) <= 1;
            emit(Json{{"q", q}, {"h", h.to_json()}, {"bounded_at_1_over_N", bounded},
                      {"sup_0_1_over_q", sup_norm(h, 0.0, 1.0 / q)}},
                 out);
            return;
        }
        const Poly h = h_of(req);
        const double delta = get_or<double>(req, "delta", 1.0 / (24.0 * std::max(1, h.degree())));
        emit(inverse_integer_ratio(h, delta).to_json(), out);
    });
}

sc_status sc_sample(sc_session* s, const sc_poly* p, const char* request, char** out)
{
    if (!s || !p || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Json req = request_of(request);
        SampleSpec spec;
        spec.ensemble = parse_ensemble(get_or<std::string>(req, "ensemble", "gue"));
        spec.N = get_or<long>(req, "N", 10);
        spec.P = p->p;
        spec.replicas = get_or<int>(req, "replicas", 100);
        spec.seed = s->seed;
        spec.threads = s->threads;
        spec.norm.dense_cap = get_or<long>(req, "dense_cap", spec.norm.dense_cap);
        std::map<std::string, Poly> stats;
        if (req.contains("h"))
            stats["h"] = h_of(req);
        const SampleRun run = run_samples(spec, stats);
        Json res{{"spec", spec.to_json()}, {"seed", spec.seed}, {"iterative", run.iterative},
                 {"norm", summarize(run.norms).to_json()}};
        for (const auto& [name, vals] : run.stats)
            res["stats"][name] = summarize(vals).to_json();
        if (req.contains("csv")) {
            std::ostringstream os;
            write_samples_csv(os, spec, run);
            write_text_file(req.at("csv").get<std::string>(), os.str());
            res["csv"] = req.at("csv");
        }
        emit(res, out);
    });
}

sc_status sc_verify(sc_session* s, const char* suite, const char* out_dir, int* passed, char** out)
{
    if (!s || !suite || !passed || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        VerifyOptions o;
        if (s->seed_set)
            o.seed = s->seed;
        o.threads = s->threads;
        RunManifest m;
        m.started = utc_timestamp();
        const VerifyReport rep = run_verify(suite, o);
        m.finished = utc_timestamp();
        *passed = rep.pass ? 1 : 0;
        const Json j = rep.to_json();
        if (out_dir) {
            const std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            write_text_file(dir / "verify.json", j.dump(2) + "\n");
            m.config_hash = fnv1a_hex(std::string("verify:") + suite + ":" + std::to_string(o.seed));
            m.build_id = build_identifier();
            m.seed = o.seed;
            for (const auto& c : rep.checks)
                m.steps.push_back({c.id, c.pass ? "ok" : "failed", c.summary});
            m.outputs = {"verify.json"};
            m.results = Json{{"verify", j}};
            write_text_file(dir / "manifest.json", m.to_json().dump(2) + "\n");
        }
        emit(j, out);
    });
}

sc_status sc_experiment(sc_session* s, const char* config_path, const char* name, const char* out_dir, int* passed,
                        char** out)
{
    if (!s || !passed || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ExperimentConfig cfg = config_path ? load_config(config_path) : parse_config("", "<defaults>");
        if (name)
            cfg.experiment = name;
        if (out_dir)
            cfg.out_dir = out_dir;
        if (s->seed_set)
            cfg.seed = s->seed;
        if (s->threads > 0)
            cfg.threads = s->threads;
        require(!cfg.experiment.empty(), ErrorCode::Parse, cfg.origin + ": no experiment named ([run] experiment)");
        RunManifest m;
        m.started = utc_timestamp();
        m.config_hash = cfg.hash();
        m.build_id = build_identifier();
        m.seed = cfg.seed;
        const ExperimentResult res = run_experiment(cfg);
        m.finished = utc_timestamp();
        m.steps = res.steps;
        m.outputs = res.files;
        m.outputs.push_back("result.json");
        const Json j = res.to_json();
        m.results = Json{{"config", cfg.to_json()}, {"experiments", Json::array({j})}};
        std::filesystem::create_directories(cfg.out_dir);
        write_text_file(cfg.out_dir / "result.json", j.dump(2) + "\n");
        write_text_file(cfg.out_dir / "manifest.json", m.to_json().dump(2) + "\n");
        *passed = res.pass ? 1 : 0;
        emit(j, out);
    });
}

sc_status sc_report(sc_session* s, const char* out_dir, int* passed, char** out)
{
    if (!s || !out_dir || !passed || !out)
        return SC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Report r = emit_report_from_dir(out_dir);
        *passed = r.all_pass && r.missing.empty() ? 1 : 0;
        *out = dup(r.text);
    });
}

} // extern "C"
