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

#ifndef STRONGCONV_STRONGCONV_H
#define STRONGCONV_STRONGCONV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(STRONGCONV_BUILDING_LIBRARY)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

typedef enum sc_status {
    SC_OK = 0,
    SC_ERR_DOMAIN = 1,
    SC_ERR_DIMENSION = 2,
    SC_ERR_POLE = 3,
    SC_ERR_SIZE_CAP = 4,
    SC_ERR_PARSE = 5,
    SC_ERR_INCONSISTENCY = 6,
    SC_ERR_NOT_SELF_ADJOINT = 7,
    SC_ERR_IO = 8,
    SC_ERR_INCOMPLETE_BASIS = 9,
    SC_ERR_EVALUATION = 10,
    SC_ERR_INVALID_ARGUMENT = 11,
    SC_ERR_INTERNAL = 12
} sc_status;

/* Opaque handles. */
typedef struct sc_session sc_session;
typedef struct sc_poly sc_poly;

SC_API const char* sc_version(void);
SC_API const char* sc_status_name(sc_status status);
/* Message of the last failing call on this thread ("" if none). */
SC_API const char* sc_last_error(void);
/* Frees every char* handed out through an out parameter. */
SC_API void sc_string_free(char* s);

SC_API sc_status sc_session_create(sc_session** out);
SC_API void sc_session_destroy(sc_session* s);
SC_API sc_status sc_session_set_seed(sc_session* s, uint64_t seed);
SC_API sc_status sc_session_set_threads(sc_session* s, int threads);
/* Character-table cache file; loaded now if present, written by save. */
SC_API sc_status sc_session_set_cache(sc_session* s, const char* path);
SC_API sc_status sc_session_save_cache(sc_session* s);

/* Noncommutative polynomial: {r, D, terms: [{word, matrix}]}. */
SC_API sc_status sc_poly_from_json(const char* json, sc_poly** out);
SC_API sc_status sc_poly_load(const char* path, sc_poly** out);
SC_API sc_status sc_poly_to_json(const sc_poly* p, char** out);
SC_API void sc_poly_free(sc_poly* p);

/* All requests and results below are JSON text. h is a coefficient list,
   lowest degree first, entries as integers or "p/q" strings. */

/* {ensemble: gue|goe|gse|haar-u|haar-o|haar-sp|free, h, N?} */
SC_API sc_status sc_moments(sc_session* s, const sc_poly* p, const char* request, char** out);
/* {group: u|o, h} */
SC_API sc_status sc_psi(sc_session* s, const sc_poly* p, const char* request, char** out);
/* {ensemble: gue|goe|haar-u, h, m} or {ensemble, support: {eps, k_max}} */
SC_API sc_status sc_expand(sc_session* s, const sc_poly* p, const char* request, char** out);
/* {h, delta} for one polynomial, or {optimality: q} */
SC_API sc_status sc_interp_check(sc_session* s, const char* request, char** out);
/* {ensemble, N, replicas, h?, csv?}; csv is a path written with one row per replica */
SC_API sc_status sc_sample(sc_session* s, const sc_poly* p, const char* request, char** out);
/* suite: exact|parity|duality|interp|support|weingarten|all. *passed is 0 or 1.
   With out_dir non-null, verify.json and manifest.json are written there. */
SC_API sc_status sc_verify(sc_session* s, const char* suite, const char* out_dir, int* passed, char** out);
/* Runs the experiment named in the INI config (name overrides it if non-null);
   out_dir overrides the config's output directory if non-null. Writes
   manifest.json there. */
SC_API sc_status sc_experiment(sc_session* s, const char* config_path, const char* name, const char* out_dir,
                               int* passed, char** out);
/* Markdown summary of out_dir/manifest.json. */
SC_API sc_status sc_report(sc_session* s, const char* out_dir, int* passed, char** out);

#ifdef __cplusplus
}
#endif

#endif
