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

#include "core/norming.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace xc {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorCategory::kValidation, msg);
}

void check_t(int t) {
  if (t < 0) fail(ErrorCategory::kDomain, "norming: time index must be >= 0");
}

double get_number(const json& p, const char* key) {
  if (!p.is_object() || !p.contains(key) || !p.at(key).is_number()) {
    fail(ErrorCategory::kValidation,
         std::string("missing or non-numeric parameter '") + key + "'");
  }
  return p.at(key).get<double>();
}

// log(b/a) for the log-scale schemes.
double log_ratio(const NormingScheme& s, double log_v) {
  return s.kind == SchemeKind::kHuslerReiss ? -0.5 * std::log(log_v) : -std::log(log_v);
}

// log a_t(v) - log v.
double log_drift(const NormingScheme& s, int t, double log_v) {
  const double l = log_v;
  if (s.kind == SchemeKind::kHuslerReiss) {
    const double gt = s.gamma * t;
    return -gt * std::sqrt(2.0 * l) + gt * std::log(l) / l + 0.5 * gt * gt;
  }
  const double g = s.gamma;
  return -(t / g) * std::log(l / s.kappa) +
         std::log1p((s.zeta(t) / (g * g)) * std::log(l) / l);
}

struct LogStep {
  double delta_a;   // log a(w) - log a_{t+1}(v)
  double ratio_w;   // log(b/a) at w
  double ratio_v;   // log(b/a) at v
};

bool log_step(const NormingScheme& s, int t, double log_v, double x, LogStep* out) {
  if (!(log_v > 1.0)) {
    fail(ErrorCategory::kDomain, s.id + ": log v must be > 1");
  }
  const double rv = log_ratio(s, log_v);
  const double grow = x * std::exp(rv);
  if (!(grow > -1.0)) return false;
  const double d = log_drift(s, t, log_v) + std::log1p(grow);
  const double lw = log_v + d;
  if (!(lw > 1.0)) return false;
  out->delta_a = d + log_drift(s, 1, lw) - log_drift(s, t + 1, log_v);
  out->ratio_w = log_ratio(s, lw);
  out->ratio_v = rv;
  return true;
}

}  // namespace

double NormingScheme::zeta(int t) const {
  const double tt = t;
  return 0.5 * tt * (tt - 1.0) + tt * c;
}

bool NormingScheme::log_scale() const {
  return kind == SchemeKind::kHuslerReiss || kind == SchemeKind::kDensityDecay;
}

double NormingScheme::log_a(int t, double log_v) const {
  check_t(t);
  if (!log_scale()) fail(ErrorCategory::kUnsupported, id + ": no log-scale form");
  if (t == 0) return log_v;
  return log_v + log_drift(*this, t, log_v);
}

double NormingScheme::log_b(int t, double log_v) const {
  return log_a(t, log_v) + log_ratio(*this, log_v);
}

double NormingScheme::a(int t, double v) const {
  check_t(t);
  if (t == 0) return v;
  switch (kind) {
    case SchemeKind::kHtCanonical: {
      if (alpha == 0.0) return 0.0;
      double x = v;
      for (int j = 0; j < t; ++j) x = alpha * x;
      return x;
    }
    case SchemeKind::kHuslerReiss:
    case SchemeKind::kDensityDecay:
      return std::exp(log_a(t, std::log(v)));
    case SchemeKind::kNegativeHt: {
      double x = v;
      for (int j = 1; j <= t; ++j) x *= (j % 2 == 1) ? alpha_minus : alpha_plus;
      return x;
    }
    case SchemeKind::kAlternatingGaussian: {
      double x = v;
      for (int j = 0; j < t; ++j) x = -rho * rho * x;
      return x;
    }
  }
  fail(ErrorCategory::kInternal, "norming: unhandled scheme");
}

double NormingScheme::b(int t, double v) const {
  check_t(t);
  if (t == 0) return 0.0;
  switch (kind) {
    case SchemeKind::kHtCanonical: {
      if (alpha > 0.0) return beta == 0.0 ? 1.0 : std::pow(v, beta);
      double x = v;
      for (int j = 0; j < t; ++j) x = std::pow(x, beta);
      return x;
    }
    case SchemeKind::kHuslerReiss:
    case SchemeKind::kDensityDecay:
      return std::exp(log_b(t, std::log(v)));
    case SchemeKind::kNegativeHt:
      return std::pow(std::fabs(v), beta);
    case SchemeKind::kAlternatingGaussian:
      return std::sqrt(std::fabs(v));
  }
  fail(ErrorCategory::kInternal, "norming: unhandled scheme");
}

double NormingScheme::step_a(int t, double w) const {
  switch (kind) {
    case SchemeKind::kHtCanonical:
      return alpha * w;
    case SchemeKind::kNegativeHt:
      return (t % 2 == 1 ? alpha_plus : alpha_minus) * w;
    case SchemeKind::kAlternatingGaussian:
      return -rho * rho * w;
    default:
      return a(1, w);
  }
}

double NormingScheme::step_b(int t, double w) const {
  switch (kind) {
    case SchemeKind::kHtCanonical:
      return beta == 0.0 ? 1.0 : std::pow(w, beta);
    case SchemeKind::kNegativeHt:
      return std::pow(std::fabs(w), beta);
    case SchemeKind::kAlternatingGaussian:
      return std::sqrt(std::fabs(w));
    default:
      (void)t;
      return b(1, w);
  }
}

NormingScheme make_ht_canonical(double alpha, double beta, MarginKind scale) {
  require(alpha >= 0.0 && alpha <= 1.0, "ht_canonical: alpha must lie in [0, 1]");
  require(beta >= 0.0 && beta < 1.0, "ht_canonical: beta must lie in [0, 1)");
  require(!(alpha == 0.0 && beta == 0.0), "ht_canonical: (alpha, beta) = (0, 0) excluded");
  NormingScheme s;
  s.kind = SchemeKind::kHtCanonical;
  s.id = "ht_canonical";
  s.alpha = alpha;
  s.beta = beta;
  s.scale = scale;
  s.params = {{"alpha", alpha}, {"beta", beta}};
  if (scale != MarginKind::kExponential) {
    s.params["scale"] = scale == MarginKind::kGaussian ? "gaussian" : "laplace";
  }
  return s;
}

NormingScheme make_husler_reiss_scheme(double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), "husler_reiss: gamma must be > 0");
  NormingScheme s;
  s.kind = SchemeKind::kHuslerReiss;
  s.id = "husler_reiss";
  s.gamma = gamma;
  s.params = {{"gamma", gamma}};
  return s;
}

NormingScheme make_density_decay_scheme(double kappa, double gamma, double delta) {
  require(kappa > 0.0 && std::isfinite(kappa), "density_decay: kappa must be > 0");
  require(gamma > 0.0 && std::isfinite(gamma), "density_decay: gamma must be > 0");
  require(std::isfinite(delta), "density_decay: delta must be finite");
  NormingScheme s;
  s.kind = SchemeKind::kDensityDecay;
  s.id = "density_decay";
  s.kappa = kappa;
  s.gamma = gamma;
  s.delta = delta;
  s.c = delta + 2.0 * (1.0 + gamma);
  require(s.c > 0.0, "density_decay: c = delta + 2(1 + gamma) must be > 0");
  s.params = {{"kappa", kappa}, {"gamma", gamma}, {"delta", delta}};
  return s;
}

NormingScheme make_negative_ht(double alpha_minus, double alpha_plus, double beta) {
  require(alpha_minus > -1.0 && alpha_minus < 0.0,
          "negative_ht: alpha_minus must lie in (-1, 0)");
  require(alpha_plus > -1.0 && alpha_plus < 0.0,
          "negative_ht: alpha_plus must lie in (-1, 0)");
  require(beta >= 0.0 && beta < 1.0, "negative_ht: beta must lie in [0, 1)");
  NormingScheme s;
  s.kind = SchemeKind::kNegativeHt;
  s.id = "negative_ht";
  s.alpha_minus = alpha_minus;
  s.alpha_plus = alpha_plus;
  s.beta = beta;
  s.scale = MarginKind::kLaplace;
  s.params = {{"alpha_minus", alpha_minus}, {"alpha_plus", alpha_plus}, {"beta", beta}};
  return s;
}

NormingScheme make_alternating_gaussian(double rho) {
  require(rho > -1.0 && rho < 0.0, "alternating_gaussian: rho must lie in (-1, 0)");
  NormingScheme s;
  s.kind = SchemeKind::kAlternatingGaussian;
  s.id = "alternating_gaussian";
  s.rho = rho;
  s.beta = 0.5;
  s.scale = MarginKind::kLaplace;
  s.params = {{"rho", rho}};
  return s;
}

NormingScheme make_norming(const std::string& id, const json& params) {
  const json p = params.is_null() ? json::object() : params;
  require(p.is_object(), "scheme '" + id + "': params must be an object");
  if (id == "ht_canonical") {
    MarginKind scale = MarginKind::kExponential;
    if (p.contains("scale")) {
      require(p.at("scale").is_string(), "ht_canonical: scale must be a string");
      scale = MarginalLaw::from_name(p.at("scale").get<std::string>()).kind();
    }
    return make_ht_canonical(get_number(p, "alpha"), get_number(p, "beta"), scale);
  }
  if (id == "husler_reiss") return make_husler_reiss_scheme(get_number(p, "gamma"));
  if (id == "density_decay") {
    return make_density_decay_scheme(get_number(p, "kappa"), get_number(p, "gamma"),
                                     get_number(p, "delta"));
  }
  if (id == "negative_ht") {
    return make_negative_ht(get_number(p, "alpha_minus"), get_number(p, "alpha_plus"),
                            get_number(p, "beta"));
  }
  if (id == "alternating_gaussian") return make_alternating_gaussian(get_number(p, "rho"));
  fail(ErrorCategory::kUnsupported, "unknown norming scheme '" + id + "'");
}

UpdateFunctions update_functions(const NormingScheme& s) { return UpdateFunctions(s); }

bool UpdateFunctions::scale_only() const {
  return scheme_.kind == SchemeKind::kHtCanonical && scheme_.alpha == 0.0;
}

double UpdateFunctions::psi_a(int s, double x) const {
  if (s < 2) fail(ErrorCategory::kDomain, "update functions are indexed from 2");
  const auto& n = scheme_;
  switch (n.kind) {
    case SchemeKind::kHtCanonical:
      return n.alpha * x;
    case SchemeKind::kHuslerReiss:
      return x;
    case SchemeKind::kDensityDecay:
      return x - ((s - 1) / (n.gamma * n.gamma)) * std::log(n.kappa);
    case SchemeKind::kNegativeHt:
      return ((s - 1) % 2 == 1 ? n.alpha_plus : n.alpha_minus) * x;
    case SchemeKind::kAlternatingGaussian:
      return -n.rho * n.rho * x;
  }
  fail(ErrorCategory::kInternal, "update functions: unhandled scheme");
}

double UpdateFunctions::psi_b(int s, double x) const {
  if (s < 2) fail(ErrorCategory::kDomain, "update functions are indexed from 2");
  const auto& n = scheme_;
  switch (n.kind) {
    case SchemeKind::kHtCanonical:
      if (n.alpha == 0.0) return x > 0.0 ? std::pow(x, n.beta) : kNaN;
      return std::pow(n.alpha, (s - 1) * n.beta);
    case SchemeKind::kHuslerReiss:
    case SchemeKind::kDensityDecay:
      return 1.0;
    case SchemeKind::kNegativeHt:
      return std::pow(std::fabs(n.a(s - 1, 1.0)), n.beta);
    case SchemeKind::kAlternatingGaussian:
      return std::pow(std::fabs(n.rho), s - 1);
  }
  fail(ErrorCategory::kInternal, "update functions: unhandled scheme");
}

Remainders remainder_terms(const NormingScheme& s, int t, double v, double x) {
  if (t < 1) fail(ErrorCategory::kDomain, "remainder_terms: t must be >= 1");
  if (s.log_scale()) return remainder_terms_log(s, t, std::log(v), x);
  const UpdateFunctions u(s);
  const double w = s.a(t, v) + s.b(t, v) * x;
  const double a1 = s.step_a(t, w);
  const double b1 = s.step_b(t, w);
  const double at1 = s.a(t + 1, v);
  const double bt1 = s.b(t + 1, v);
  if (!(b1 > 0.0) || !std::isfinite(b1)) return {kNaN, kNaN};
  const double pa = u.psi_a(t + 1, x);
  const double pb = u.psi_b(t + 1, x);
  return {(at1 - a1 + bt1 * pa) / b1, 1.0 - bt1 * pb / b1};
}

Remainders remainder_terms_log(const NormingScheme& s, int t, double log_v, double x) {
  if (t < 1) fail(ErrorCategory::kDomain, "remainder_terms: t must be >= 1");
  if (!s.log_scale()) return remainder_terms(s, t, std::exp(log_v), x);
  LogStep st;
  if (!log_step(s, t, log_v, x, &st)) return {kNaN, kNaN};
  const UpdateFunctions u(s);
  const double pa = u.psi_a(t + 1, x);
  const double pb = u.psi_b(t + 1, x);
  // Numerator and denominator scaled by 1/a_{t+1}(v).
  const double num = -std::expm1(st.delta_a) + pa * std::exp(st.ratio_v);
  const double den = std::exp(st.delta_a + st.ratio_w);
  return {num / den,
          -std::expm1(st.ratio_v + std::log(pb) - st.delta_a - st.ratio_w)};
}

PsiEstimate psi_at(const NormingScheme& s, int t, double v, double x) {
  if (t < 1) fail(ErrorCategory::kDomain, "psi_at: t must be >= 1");
  if (s.log_scale()) return psi_at_log(s, t, std::log(v), x);
  const double w = s.a(t, v) + s.b(t, v) * x;
  const double bt1 = s.b(t + 1, v);
  return {(s.step_a(t, w) - s.a(t + 1, v)) / bt1, s.step_b(t, w) / bt1};
}

PsiEstimate psi_at_log(const NormingScheme& s, int t, double log_v, double x) {
  if (t < 1) fail(ErrorCategory::kDomain, "psi_at: t must be >= 1");
  if (!s.log_scale()) return psi_at(s, t, std::exp(log_v), x);
  LogStep st;
  if (!log_step(s, t, log_v, x, &st)) return {kNaN, kNaN};
  return {std::expm1(st.delta_a) * std::exp(-st.ratio_v),
          std::exp(st.delta_a + st.ratio_w - st.ratio_v)};
}

NormingScheme default_scheme(const KernelSpec& k) {
  switch (k.kind) {
    case KernelKind::kGaussianCopula:
      if (k.rho < 0.0) {
        if (k.margin.kind() != MarginKind::kLaplace) break;
        return make_alternating_gaussian(k.rho);
      }
      return make_ht_canonical(k.margin.kind() == MarginKind::kGaussian ? k.rho : k.rho * k.rho,
                               k.margin.kind() == MarginKind::kGaussian ? 0.0 : 0.5,
                               k.margin.kind());
    case KernelKind::kInvertedMaxStable:
      if (k.exponent.kind == ExponentMeasure::Kind::kHuslerReiss) {
        return make_husler_reiss_scheme(k.exponent.gamma);
      }
      if (k.exponent.family == "density_decay") {
        return make_density_decay_scheme(k.exponent.params.at(0), k.exponent.params.at(1),
                                         k.exponent.params.at(2));
      }
      break;
    case KernelKind::kAsymmetricLogistic:
      return make_ht_canonical(1.0, 0.0);
    case KernelKind::kHtMixture: {
      const auto h = k.first->canonical_norming();
      return make_ht_canonical(h->alpha, h->beta);
    }
    default:
      break;
  }
  if (const auto h = k.canonical_norming()) return make_ht_canonical(h->alpha, h->beta);
  fail(ErrorCategory::kUnsupported, "no default norming scheme for kernel '" + k.id + "'");
}

}  // namespace xc
