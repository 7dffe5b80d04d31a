/* mwelect: committee selection under the s-Borda (Chamberlin-Courant) rule.
 *
 * Stable C interface to the core library. Profiles are opaque handles;
 * structured results come back as JSON strings allocated by the library and
 * released with mw_string_free. All functions return MW_OK on success; on
 * failure mw_last_error() describes the problem for the calling thread.
 */
#ifndef MWELECT_H
#define MWELECT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mw_status {
    MW_OK = 0,
    MW_ERR_ARGUMENT = 1,    /* invalid argument or precondition */
    MW_ERR_PARSE = 2,       /* malformed input file */
    MW_ERR_CAP = 3,         /* a resource cap was exceeded */
    MW_ERR_VERIFY = 4,      /* a verification suite reported failures */
    MW_ERR_INTERNAL = 5
} mw_status;

typedef struct mw_profile mw_profile;

const char* mw_version(void);

/* Thread-local message for the most recent failure. */
const char* mw_last_error(void);

void mw_string_free(char* s);
void mw_profile_free(mw_profile* p);

/* format: "auto", "text", "json", "preflib" (read only). */
mw_status mw_profile_load(const char* path, const char* format, mw_profile** out);
mw_status mw_profile_parse(const char* data, const char* format, mw_profile** out);
mw_status mw_profile_save(const mw_profile* p, const char* path, const char* format);

/* Generator parameters as JSON, e.g.
 *   {"kind":"random","m":20,"n":100,"k":3,"seed":7}
 *   {"kind":"allperm","m":5}
 *   {"kind":"spiral","layers":8,"resolution":1000}
 *   {"kind":"monotone-gap","m":10000}
 *   {"kind":"core-cex","m":16}
 *   {"kind":"sborda-bad","m":400,"k":80,"s":16}
 *   {"kind":"from-cover","cover_path":"cover.txt","eps":0.05,"seed":1}
 */
mw_status mw_profile_generate(const char* params_json, mw_profile** out);

mw_status mw_profile_info(const mw_profile* p, int32_t* m, int64_t* voters_or_groups,
                          int32_t* is_symmetric, int32_t* s_default);

/* Exact s-Borda score of a committee, as a "p/q" string. */
mw_status mw_score(const mw_profile* p, const int32_t* members, int32_t len, int32_t s,
                   char** score_out);

/* rule: "greedy", "banzhaf", "random", "opt", "lp-round".
 * options_json (may be NULL): {"trials":1000,"opt_cap":10000000,
 *   "exact":true,"with_trace":true,"attach_opt":true}
 * Returns a run-report JSON document. */
mw_status mw_solve(const mw_profile* p, const char* rule, int32_t k, int32_t s, uint64_t seed,
                   const char* options_json, char** report_json_out);

/* suite: "greedy-bounds", "banzhaf-bounds", "core", "monotone", "lp",
 * "order-stats", or "all". options_json (may be NULL): {"seed":...,
 * "instances":1000,"quick":false}. Returns MW_ERR_VERIFY when checks fail;
 * the JSON summary is produced either way. */
mw_status mw_verify(const char* suite, const char* options_json, char** summary_json_out);

/* Runs a benchmark manifest (JSON text, schema 1) and writes a CSV file. */
mw_status mw_bench(const char* manifest_json, const char* out_csv_path);

/* Closed forms behind the committee-monotonicity gap; label_out receives
 * "Y", "XX" or "XY" and must have room for 4 bytes. */
mw_status mw_eval_monotonicity_bound(double a, double b, double* bound_out, char* label_out);

#ifdef __cplusplus
}
#endif

#endif /* MWELECT_H */
