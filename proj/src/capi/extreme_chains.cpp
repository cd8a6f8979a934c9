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

#include "extreme_chains/extreme_chains.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/experiment.hpp"
#include "core/kernels.hpp"
#include "core/limit_law.hpp"
#include "core/margins.hpp"
#include "core/norming.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "json.hpp"

struct xc_margin {
  xc::MarginalLaw law;
};
struct xc_kernel {
  xc::KernelPtr k;
};
struct xc_scheme {
  xc::NormingScheme s;
};
struct xc_limit {
  xc::LimitLaw l;
};

namespace {

constexpr std::uint64_t kTagKernelSample = 0xc0a1;

thread_local std::string g_last_error;

xc_status to_status(xc::ErrorCategory c) {
  using xc::ErrorCategory;
  switch (c) {
    case ErrorCategory::kDomain: return XC_ERR_DOMAIN;
    case ErrorCategory::kValidation: return XC_ERR_VALIDATION;
    case ErrorCategory::kBracketing: return XC_ERR_BRACKETING;
    case ErrorCategory::kAccuracy: return XC_ERR_ACCURACY;
    case ErrorCategory::kConvergence: return XC_ERR_CONVERGENCE;
    case ErrorCategory::kUnsupported: return XC_ERR_UNSUPPORTED;
    case ErrorCategory::kRegime: return XC_ERR_REGIME;
    case ErrorCategory::kSampling: return XC_ERR_SAMPLING;
    case ErrorCategory::kIo: return XC_ERR_IO;
    case ErrorCategory::kInternal: return XC_ERR_INTERNAL;
  }
  return XC_ERR_INTERNAL;
}

template <typename F>
xc_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return XC_OK;
  } catch (const xc::Error& e) {
    g_last_error = std::string(xc::category_name(e.category())) + ": " + e.what();
    return to_status(e.category());
  } catch (const std::bad_alloc&) {
    g_last_error = "internal: out of memory";
    return XC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return XC_ERR_INTERNAL;
  }
}

xc_status null_argument() {
  g_last_error = "null argument";
  return XC_ERR_NULL_ARGUMENT;
}

nlohmann::json parse_params(const char* text) {
  if (!text || !*text) return nlohmann::json::object();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    xc::fail(xc::ErrorCategory::kValidation, std::string("params: ") + e.what());
  }
  if (!j.is_object()) xc::fail(xc::ErrorCategory::kValidation, "params must be a JSON object");
  return j;
}

unsigned resolve_workers(unsigned w) { return w == 0 ? xc::default_workers() : w; }

}  // namespace

extern "C" {

const char* xc_version(void) { return xc::kVersion; }

const char* xc_status_name(xc_status status) {
  switch (status) {
    case XC_OK: return "ok";
    case XC_ERR_DOMAIN: return "domain";
    case XC_ERR_VALIDATION: return "validation";
    case XC_ERR_BRACKETING: return "bracketing";
    case XC_ERR_ACCURACY: return "accuracy";
    case XC_ERR_CONVERGENCE: return "convergence";
    case XC_ERR_UNSUPPORTED: return "unsupported";
    case XC_ERR_REGIME: return "regime";
    case XC_ERR_SAMPLING: return "sampling";
    case XC_ERR_IO: return "io";
    case XC_ERR_INTERNAL: return "internal";
    case XC_ERR_NULL_ARGUMENT: return "null_argument";
  }
  return "unknown";
}

int xc_status_exit_code(xc_status status) {
  switch (status) {
    case XC_OK: return 0;
    case XC_ERR_VALIDATION:
    case XC_ERR_UNSUPPORTED:
    case XC_ERR_NULL_ARGUMENT: return 2;
    case XC_ERR_IO: return 4;
    default: return 3;
  }
}

const char* xc_last_error(void) { return g_last_error.c_str(); }

xc_status xc_margin_create(const char* name, xc_margin** out) {
  if (!name || !out) return null_argument();
  return guarded([&] { *out = new xc_margin{xc::MarginalLaw::from_name(name)}; });
}

void xc_margin_destroy(xc_margin* m) { delete m; }

xc_status xc_margin_cdf(const xc_margin* m, double x, double* out) {
  if (!m || !out) return null_argument();
  return guarded([&] { *out = m->law.cdf(x); });
}

xc_status xc_margin_sf(const xc_margin* m, double x, double* out) {
  if (!m || !out) return null_argument();
  return guarded([&] { *out = m->law.sf(x); });
}

xc_status xc_margin_quantile(const xc_margin* m, double p, double* out) {
  if (!m || !out) return null_argument();
  return guarded([&] { *out = m->law.quantile(p); });
}

xc_status xc_margin_isf(const xc_margin* m, double q, double* out) {
  if (!m || !out) return null_argument();
  return guarded([&] { *out = m->law.isf(q); });
}

xc_status xc_margin_transform(const xc_margin* from, const xc_margin* to, double x,
                              double* out) {
  if (!from || !to || !out) return null_argument();
  return guarded([&] { *out = xc::transform(x, from->law, to->law); });
}

xc_status xc_kernel_create(const char* id, const char* params_json, uint64_t seed,
                           xc_kernel** out) {
  if (!id || !out) return null_argument();
  return guarded([&] { *out = new xc_kernel{xc::make_kernel(id, parse_params(params_json), seed)}; });
}

void xc_kernel_destroy(xc_kernel* k) { delete k; }

xc_status xc_kernel_cdf(const xc_kernel* k, double x, double y, double* out) {
  if (!k || !out) return null_argument();
  return guarded([&] { *out = xc::kernel_cdf(*k->k, x, y); });
}

xc_status xc_kernel_quantile(const xc_kernel* k, double x, double u, double* out) {
  if (!k || !out) return null_argument();
  return guarded([&] { *out = xc::kernel_quantile(*k->k, x, u); });
}

xc_status xc_kernel_sample(const xc_kernel* k, double x, uint64_t seed, size_t n, double* out) {
  if (!k || (!out && n > 0)) return null_argument();
  return guarded([&] {
    xc::for_each_chunk(n, 1, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
      xc::Rng rng = xc::make_stream(seed, kTagKernelSample, chunk);
      for (std::size_t i = lo; i < hi; ++i) out[i] = xc::kernel_sample(*k->k, x, rng);
    });
  });
}

xc_status xc_kernel_canonical_norming(const xc_kernel* k, double* alpha, double* beta) {
  if (!k || !alpha || !beta) return null_argument();
  return guarded([&] {
    const auto p = k->k->canonical_norming();
    if (!p) xc::fail(xc::ErrorCategory::kUnsupported, "kernel has no canonical norming");
    *alpha = p->alpha;
    *beta = p->beta;
  });
}

xc_status xc_scheme_create(const char* id, const char* params_json, xc_scheme** out) {
  if (!id || !out) return null_argument();
  return guarded([&] { *out = new xc_scheme{xc::make_norming(id, parse_params(params_json))}; });
}

xc_status xc_scheme_default(const xc_kernel* k, xc_scheme** out) {
  if (!k || !out) return null_argument();
  return guarded([&] { *out = new xc_scheme{xc::default_scheme(*k->k)}; });
}

void xc_scheme_destroy(xc_scheme* s) { delete s; }

xc_status xc_scheme_a(const xc_scheme* s, int t, double v, double* out) {
  if (!s || !out) return null_argument();
  return guarded([&] { *out = s->s.a(t, v); });
}

xc_status xc_scheme_b(const xc_scheme* s, int t, double v, double* out) {
  if (!s || !out) return null_argument();
  return guarded([&] { *out = s->s.b(t, v); });
}

xc_status xc_scheme_psi(const xc_scheme* s, int index, double x, double* psi_a, double* psi_b) {
  if (!s || !psi_a || !psi_b) return null_argument();
  return guarded([&] {
    const xc::UpdateFunctions u = xc::update_functions(s->s);
    *psi_a = u.psi_a(index, x);
    *psi_b = u.psi_b(index, x);
  });
}

xc_status xc_scheme_remainders(const xc_scheme* s, int t, double v, double x, double* r_a,
                               double* r_b) {
  if (!s || !r_a || !r_b) return null_argument();
  return guarded([&] {
    const xc::Remainders r = xc::remainder_terms(s->s, t, v, x);
    *r_a = r.r_a;
    *r_b = r.r_b;
  });
}

xc_status xc_scheme_remainders_log(const xc_scheme* s, int t, double log_v, double x,
                                   double* r_a, double* r_b) {
  if (!s || !r_a || !r_b) return null_argument();
  return guarded([&] {
    const xc::Remainders r = xc::remainder_terms_log(s->s, t, log_v, x);
    *r_a = r.r_a;
    *r_b = r.r_b;
  });
}

xc_status xc_limit_create(const char* id, const char* params_json, xc_limit** out) {
  if (!id || !out) return null_argument();
  return guarded([&] { *out = new xc_limit{xc::make_limit_law(id, parse_params(params_json))}; });
}

xc_status xc_limit_default(const xc_kernel* k, xc_limit** out) {
  if (!k || !out) return null_argument();
  return guarded([&] { *out = new xc_limit{xc::default_limit_law(*k->k)}; });
}

void xc_limit_destroy(xc_limit* l) { delete l; }

xc_status xc_limit_cdf(const xc_limit* l, double x, double* out) {
  if (!l || !out) return null_argument();
  return guarded([&] { *out = l->l.cdf(x); });
}

xc_status xc_limit_atoms(const xc_limit* l, double* atom_lo, double* atom_hi) {
  if (!l || !atom_lo || !atom_hi) return null_argument();
  *atom_lo = l->l.atom_lo();
  *atom_hi = l->l.atom_hi();
  g_last_error.clear();
  return XC_OK;
}

xc_status xc_tail_chain_simulate(const xc_scheme* s, const xc_limit* l, int horizon, size_t n,
                                 uint64_t seed, unsigned workers, double* out) {
  if (!s || !l || (!out && n > 0)) return null_argument();
  return guarded([&] {
    if (horizon < 1) xc::fail(xc::ErrorCategory::kValidation, "horizon must be >= 1");
    const xc::Exec exec{seed, resolve_workers(workers)};
    const xc::TailChainPaths p = xc::simulate_for_scheme(s->s, l->l, horizon, n, exec);
    std::copy(p.m.begin(), p.m.end(), out);
  });
}

xc_status xc_run_experiment(const char* config_path, const char* out_dir, unsigned workers) {
  if (!config_path || !out_dir) return null_argument();
  return guarded([&] {
    const xc::ExperimentConfig cfg = xc::load_config(config_path);
    xc::run_experiment(cfg, out_dir, resolve_workers(workers));
  });
}

xc_status xc_validate_config(const char* config_path) {
  if (!config_path) return null_argument();
  return guarded([&] { xc::load_config(config_path); });
}

}  // extern "C"
