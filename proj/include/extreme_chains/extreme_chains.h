// Copyright 2026 The extreme-chains Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EXTREME_CHAINS_EXTREME_CHAINS_H
#define EXTREME_CHAINS_EXTREME_CHAINS_H

#include <stddef.h>
#include <stdint.h>

#if defined(XC_BUILDING_LIBRARY)
#define XC_API __attribute__((visibility("default")))
#else
#define XC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xc_status {
  XC_OK = 0,
  XC_ERR_DOMAIN = 1,
  XC_ERR_VALIDATION = 2,
  XC_ERR_BRACKETING = 3,
  XC_ERR_ACCURACY = 4,
  XC_ERR_CONVERGENCE = 5,
  XC_ERR_UNSUPPORTED = 6,
  XC_ERR_REGIME = 7,
  XC_ERR_SAMPLING = 8,
  XC_ERR_IO = 9,
  XC_ERR_INTERNAL = 10,
  XC_ERR_NULL_ARGUMENT = 11,
} xc_status;

typedef struct xc_margin xc_margin;
typedef struct xc_kernel xc_kernel;
typedef struct xc_scheme xc_scheme;
typedef struct xc_limit xc_limit;

XC_API const char* xc_version(void);
XC_API const char* xc_status_name(xc_status status);
/* Process exit code for a status: 0 ok, 2 invalid input, 4 i/o, 3 otherwise. */
XC_API int xc_status_exit_code(xc_status status);
/* Message of the last failed call on this thread; "" if none. */
XC_API const char* xc_last_error(void);

/* Margins: "exponential", "laplace", "frechet", "gaussian". */
XC_API xc_status xc_margin_create(const char* name, xc_margin** out);
XC_API void xc_margin_destroy(xc_margin* m);
XC_API xc_status xc_margin_cdf(const xc_margin* m, double x, double* out);
XC_API xc_status xc_margin_sf(const xc_margin* m, double x, double* out);
XC_API xc_status xc_margin_quantile(const xc_margin* m, double p, double* out);
XC_API xc_status xc_margin_isf(const xc_margin* m, double q, double* out);
XC_API xc_status xc_margin_transform(const xc_margin* from, const xc_margin* to, double x,
                                     double* out);

/* Kernels; params_json is a JSON object (NULL means {}). */
XC_API xc_status xc_kernel_create(const char* id, const char* params_json, uint64_t seed,
                                  xc_kernel** out);
XC_API void xc_kernel_destroy(xc_kernel* k);
XC_API xc_status xc_kernel_cdf(const xc_kernel* k, double x, double y, double* out);
XC_API xc_status xc_kernel_quantile(const xc_kernel* k, double x, double u, double* out);
/* n draws of X_1 given X_0 = x; reproducible in (seed, n). */
XC_API xc_status xc_kernel_sample(const xc_kernel* k, double x, uint64_t seed, size_t n,
                                  double* out);
/* Fails with XC_ERR_UNSUPPORTED when the kernel has no canonical pair. */
XC_API xc_status xc_kernel_canonical_norming(const xc_kernel* k, double* alpha, double* beta);

/* Norming schemes. */
XC_API xc_status xc_scheme_create(const char* id, const char* params_json, xc_scheme** out);
XC_API xc_status xc_scheme_default(const xc_kernel* k, xc_scheme** out);
XC_API void xc_scheme_destroy(xc_scheme* s);
XC_API xc_status xc_scheme_a(const xc_scheme* s, int t, double v, double* out);
XC_API xc_status xc_scheme_b(const xc_scheme* s, int t, double v, double* out);
/* Update functions psi^a_s, psi^b_s for s >= 2. */
XC_API xc_status xc_scheme_psi(const xc_scheme* s, int index, double x, double* psi_a,
                               double* psi_b);
XC_API xc_status xc_scheme_remainders(const xc_scheme* s, int t, double v, double x,
                                      double* r_a, double* r_b);
/* Same for log-scale schemes, with log_v = log v. */
XC_API xc_status xc_scheme_remainders_log(const xc_scheme* s, int t, double log_v, double x,
                                          double* r_a, double* r_b);

/* Limit laws. */
XC_API xc_status xc_limit_create(const char* id, const char* params_json, xc_limit** out);
XC_API xc_status xc_limit_default(const xc_kernel* k, xc_limit** out);
XC_API void xc_limit_destroy(xc_limit* l);
XC_API xc_status xc_limit_cdf(const xc_limit* l, double x, double* out);
XC_API xc_status xc_limit_atoms(const xc_limit* l, double* atom_lo, double* atom_hi);

/* Tail chain M_1..M_horizon for n paths; out[i * horizon + t - 1]. */
XC_API xc_status xc_tail_chain_simulate(const xc_scheme* s, const xc_limit* l, int horizon,
                                        size_t n, uint64_t seed, unsigned workers, double* out);

/* Loads and validates a JSON config, then writes artifacts into out_dir.
   workers = 0 picks the hardware default. */
XC_API xc_status xc_run_experiment(const char* config_path, const char* out_dir,
                                   unsigned workers);
XC_API xc_status xc_validate_config(const char* config_path);

#ifdef __cplusplus
}
#endif

#endif /* EXTREME_CHAINS_EXTREME_CHAINS_H */
