/* boltzmann-gate C API: opaque handles, status codes, JSON payloads.
 *
 * All functions returning bg_status accept an optional `error` out-parameter;
 * on failure it receives a malloc'd message to be released with
 * bg_string_free. Returned strings (reports, markdown, CSV) are likewise
 * owned by the caller.
 */

#ifndef BOLTZMANN_GATE_H
#define BOLTZMANN_GATE_H

#include <stddef.h>

#if defined(_WIN32)
#define BG_API __declspec(dllexport)
#else
#define BG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bg_status {
  BG_OK = 0,
  BG_ERR_INVALID_ARGUMENT = 1,
  BG_ERR_DATA = 2,         /* malformed input data */
  BG_ERR_LOOKUP = 3,       /* missing temperature, menu, state, or cell */
  BG_ERR_RANGE = 4,        /* tabulated function queried outside its range */
  BG_ERR_INSUFFICIENT = 5, /* not enough usable samples */
  BG_ERR_IO = 6,
  BG_ERR_INTERNAL = 7
} bg_status;

/* Tabulated empirical frequencies over a temperature grid and menu family. */
typedef struct bg_rsf bg_rsf;

BG_API const char* bg_version(void);

BG_API void bg_string_free(char* s);
BG_API void bg_rsf_free(bg_rsf* rsf);

/* CSV with header `temperature,menu_id,state,count`, or
 * `temperature,menu_id,state,frequency` for exactly-known families.
 * jeffreys_smoothing != 0 adds 1/2 to every cell of every count group. */
BG_API bg_status bg_rsf_read_csv(const char* path, int jeffreys_smoothing, bg_rsf** out,
                                 char** error);

/* exact_frequencies != 0 writes the frequency format (required for exact
 * families, which hold no counts). */
BG_API bg_status bg_rsf_write_csv(const bg_rsf* rsf, const char* path, int exact_frequencies,
                                  char** error);

/* family_json:
 * {
 *   "kind": "boltzmann" | "softmax" | "uniform" | "probit-binary" |
 *           "crossing-logodds" | "scaled-conditioning-breaker",
 *   "grid": [0.25, 0.5, 1, 2, 4],
 *   "states": [{"id": "a", "energy": 0.0}, ...],
 *   "menus": [{"id": "ab", "members": ["a", "b"]}, ...],
 *   "n": 100000,          // samples per (t, menu); 0 = exact frequencies
 *   "seed": 7,
 *   "k": 1.0,             // boltzmann / scaled-conditioning-breaker
 *   "kappa": {"k": 2.0} | {"preset": "t"|"2t"|"t^2"|"t+t^3"} |
 *            {"table": [[t, kappa], ...]},   // softmax
 *   "c0": 1.0, "c1": 1.0, // crossing-logodds: ln r_t = c0 - c1 t
 *   "scale": 2.0          // scaled-conditioning-breaker binary-menu factor
 * }
 */
BG_API bg_status bg_generate(const char* family_json, bg_rsf** out, char** error);

/* config_json, all fields optional:
 * {"alpha": 0.01, "sum_tol": 1e-9, "min_samples": 3, "seed": 7}
 * The seed, when given, is echoed into the report configuration block.
 * On success *overall_pass is 1 when the first six checks all pass. */
BG_API bg_status bg_check(const bg_rsf* rsf, const char* config_json, int* overall_pass,
                          char** report_json, char** error);

BG_API bg_status bg_recover(const bg_rsf* rsf, const char* config_json, char** report_json,
                            char** error);

/* model_json:
 * {"quadratic": [[1.0]], "linear": [0.0], "constant": 0.0, "k": 1.0,
 *  "samples": 1000, "seed": 1, "box": [-3.0, 3.0]}
 * Verdict from the mixture inequalities cross-checked against the direct
 * midpoint oracle. */
BG_API bg_status bg_convexity(const char* model_json, char** report_json, char** error);

/* Render any boltzmann-gate/1 report as markdown. */
BG_API bg_status bg_report_markdown(const char* report_json, char** markdown, char** error);

#ifdef __cplusplus
}
#endif

#endif /* BOLTZMANN_GATE_H */
