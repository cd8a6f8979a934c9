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

#include "core/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "core/error.hpp"
#include "core/special.hpp"

namespace xc {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinState = 1e-300;

void require(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorCategory::kValidation, msg);
}

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

std::shared_ptr<KernelSpec> base(KernelKind kind, const std::string& id,
                                 const MarginalLaw& margin) {
  auto k = std::make_shared<KernelSpec>();
  k->kind = kind;
  k->id = id;
  k->margin = margin;
  return k;
}

double get_number(const json& p, const char* key) {
  if (!p.is_object() || !p.contains(key) || !p.at(key).is_number()) {
    fail(ErrorCategory::kValidation,
         std::string("missing or non-numeric parameter '") + key + "'");
  }
  return p.at(key).get<double>();
}

double get_number_or(const json& p, const char* key, double fallback) {
  if (!p.is_object() || !p.contains(key)) return fallback;
  if (!p.at(key).is_number()) {
    fail(ErrorCategory::kValidation,
         std::string("parameter '") + key + "' must be numeric");
  }
  return p.at(key).get<double>();
}

// log(1 + r) with r = exp(lr).
double log1p_r(double lr) { return log1p_exp(lr); }

ExponentMeasure exponent_from_json(const json& e) {
  std::string id;
  json p = json::object();
  if (e.is_string()) {
    id = e.get<std::string>();
  } else if (e.is_object() && e.contains("id") && e.at("id").is_string()) {
    id = e.at("id").get<std::string>();
    p = e;
  } else {
    fail(ErrorCategory::kValidation, "inverted_max_stable: 'exponent' needs an id");
  }
  if (id == "husler_reiss") return husler_reiss(get_number(p, "gamma"));
  if (id == "uniform") return uniform_density();
  if (id == "symmetric_beta") return symmetric_beta_density(get_number(p, "s"));
  if (id == "density_decay") {
    return density_decay_density(get_number(p, "kappa"), get_number(p, "gamma"),
                                 get_number(p, "delta"));
  }
  fail(ErrorCategory::kUnsupported, "unknown exponent measure '" + id + "'");
}

// Gaussian copula in Gaussian units.
double to_gauss(const KernelSpec& k, double x) {
  if (k.margin.kind() == MarginKind::kGaussian) return x;
  return transform(x, k.margin, MarginalLaw::gaussian());
}

double from_gauss(const KernelSpec& k, double z) {
  if (k.margin.kind() == MarginKind::kGaussian) return z;
  return transform(z, MarginalLaw::gaussian(), k.margin);
}

// Uncentred quantile U(x) = F_W^{-1}(1 - e^{-x}), W = V + 1/(1 - phi).
double exp_ar_u(const KernelSpec& k, double x) {
  if (x <= 0.0) return 0.0;
  return k.fv->isf_w(std::exp(-x));
}

double arch_sigma(const KernelSpec& k, double x) {
  const double y = transform(x, MarginalLaw::laplace(), k.stationary);
  return std::sqrt(k.theta0 + k.theta1 * y * y);
}

double numeric_quantile(const KernelSpec& k, double x, double u) {
  const bool positive = k.margin.kind() == MarginKind::kExponential;
  auto f = [&](double y) { return kernel_cdf(k, x, y) - u; };
  double w = 50.0;
  double lo = 0.0, hi = 0.0;
  for (int i = 0;; ++i) {
    lo = positive ? std::max(x - w, 0.0) : x - w;
    hi = x + w;
    if (f(lo) <= 0.0 && f(hi) >= 0.0) break;
    if (i == 10) {
      std::ostringstream os;
      os.precision(17);
      os << "inverse-CDF sampling (" << k.id << "): no bracket for x=" << x
         << " u=" << u;
      fail(ErrorCategory::kSampling, os.str());
    }
    w *= 2.0;
  }
  RootOptions opt;
  opt.xtol = 1e-15;
  opt.ftol = 1e-12;
  double y;
  try {
    y = solve_root_bracketed(f, lo, hi, opt).x;
  } catch (const Error& e) {
    std::ostringstream os;
    os.precision(17);
    os << "inverse-CDF sampling (" << k.id << ") failed at x=" << x << " u=" << u
       << ": " << e.what();
    fail(ErrorCategory::kSampling, os.str());
  }
  return positive ? std::max(y, kMinState) : y;
}

void check_x(const KernelSpec& k, double x) {
  if (!in_support(k, x)) {
    std::ostringstream os;
    os.precision(17);
    os << k.id << ": conditioning state x=" << x << " outside the support";
    fail(ErrorCategory::kDomain, os.str());
  }
}

}  // namespace

std::optional<HtParams> KernelSpec::canonical_norming() const {
  switch (kind) {
    case KernelKind::kGaussianCopula:
      if (rho <= 0.0) return std::nullopt;
      if (margin.kind() == MarginKind::kGaussian) return HtParams{rho, 0.0};
      return HtParams{rho * rho, 0.5};
    case KernelKind::kBevLogistic:
      return HtParams{1.0, 0.0};
    case KernelKind::kInvertedBevLogistic:
      return HtParams{0.0, 1.0 - gamma};
    case KernelKind::kInvertedMaxStable:
      if (exponent.kind == ExponentMeasure::Kind::kDensity) {
        if (exponent.family == "uniform") return HtParams{0.0, 0.5};
        if (exponent.family == "symmetric_beta") {
          const double s = exponent.params.at(0);
          return HtParams{0.0, (s + 1.0) / (s + 2.0)};
        }
      }
      return std::nullopt;
    case KernelKind::kExpAR:
      return HtParams{phi, 0.0};
    default:
      return std::nullopt;
  }
}

KernelPtr make_gaussian_copula(double rho, const MarginalLaw& margin) {
  require(rho > -1.0 && rho < 1.0 && rho != 0.0,
          "gaussian_copula: rho must lie in (-1, 1) excluding 0");
  const auto mk = margin.kind();
  require(mk == MarginKind::kExponential || mk == MarginKind::kLaplace ||
              mk == MarginKind::kGaussian,
          "gaussian_copula: margins must be exponential, laplace or gaussian");
  auto k = base(KernelKind::kGaussianCopula, "gaussian_copula", margin);
  k->rho = rho;
  k->params = {{"rho", rho}, {"margins", margin.name()}};
  return k;
}

KernelPtr make_bev_logistic(double gamma) {
  require(open_unit(gamma), "bev_logistic: gamma must lie in (0, 1)");
  auto k = base(KernelKind::kBevLogistic, "bev_logistic", MarginalLaw::exponential());
  k->gamma = gamma;
  k->params = {{"gamma", gamma}};
  return k;
}

KernelPtr make_inverted_bev_logistic(double gamma) {
  require(open_unit(gamma), "inverted_bev_logistic: gamma must lie in (0, 1)");
  auto k = base(KernelKind::kInvertedBevLogistic, "inverted_bev_logistic",
                MarginalLaw::exponential());
  k->gamma = gamma;
  k->params = {{"gamma", gamma}};
  return k;
}

KernelPtr make_asymmetric_logistic(double phi1, double phi2, double nu) {
  require(open_unit(phi1), "asymmetric_logistic: phi1 must lie in (0, 1)");
  require(open_unit(phi2), "asymmetric_logistic: phi2 must lie in (0, 1)");
  require(open_unit(nu), "asymmetric_logistic: nu must lie in (0, 1)");
  auto k = base(KernelKind::kAsymmetricLogistic, "asymmetric_logistic",
                MarginalLaw::exponential());
  k->phi1 = phi1;
  k->phi2 = phi2;
  k->nu = nu;
  k->params = {{"phi1", phi1}, {"phi2", phi2}, {"nu", nu}};
  return k;
}

KernelPtr make_inverted_max_stable(const ExponentMeasure& e) {
  auto k = base(KernelKind::kInvertedMaxStable, "inverted_max_stable",
                MarginalLaw::exponential());
  k->exponent = e;
  json ex = {{"id", e.name()}};
  if (e.kind == ExponentMeasure::Kind::kHuslerReiss) {
    ex["gamma"] = e.gamma;
  } else if (e.family == "symmetric_beta") {
    ex["s"] = e.params.at(0);
  } else if (e.family == "density_decay") {
    ex["kappa"] = e.params.at(0);
    ex["gamma"] = e.params.at(1);
    ex["delta"] = e.params.at(2);
  }
  k->params = {{"exponent", ex}};
  return k;
}

KernelPtr make_exp_ar(double phi, std::size_t grid_size, double tol) {
  require(open_unit(phi), "exp_ar: phi must lie in (0, 1)");
  auto k = base(KernelKind::kExpAR, "exp_ar", MarginalLaw::exponential());
  k->phi = phi;
  k->fv = std::make_shared<FvSolution>(solve_fv_fixed_point(phi, grid_size, tol));
  k->params = {{"phi", phi}};
  return k;
}

KernelPtr make_ht_mixture(double lambda, KernelPtr first, KernelPtr second) {
  require(open_unit(lambda), "ht_mixture: lambda must lie in (0, 1)");
  require(first && second, "ht_mixture: both components are required");
  const auto h1 = first->canonical_norming();
  const auto h2 = second->canonical_norming();
  require(h1 && h2, "ht_mixture: components must admit canonical (alpha, beta) normings");
  require(first->margin.kind() == second->margin.kind(),
          "ht_mixture: components must share the marginal scale");
  require(h1->alpha > h2->alpha, "ht_mixture: requires alpha1 > alpha2");
  auto k = base(KernelKind::kHtMixture, "ht_mixture", first->margin);
  k->lambda = lambda;
  k->first = std::move(first);
  k->second = std::move(second);
  k->params = {{"lambda", lambda},
               {"first", {{"id", k->first->id}, {"params", k->first->params}}},
               {"second", {{"id", k->second->id}, {"params", k->second->params}}}};
  return k;
}

KernelPtr make_rootzen_smith() {
  return base(KernelKind::kRootzenSmith, "rootzen_smith", MarginalLaw::laplace());
}

KernelPtr make_arch_laplace(double theta0, double theta1, const MarginalLaw& stationary) {
  require(theta0 > 0.0 && std::isfinite(theta0), "arch_laplace: theta0 must be > 0");
  require(theta1 > 0.0 && theta1 <= 1.0, "arch_laplace: theta1 must lie in (0, 1]");
  require(stationary.kind() == MarginKind::kArchStationary,
          "arch_laplace: stationary law must be ARCH-stationary");
  auto k = base(KernelKind::kArchLaplace, "arch_laplace", MarginalLaw::laplace());
  k->theta0 = theta0;
  k->theta1 = theta1;
  k->stationary = stationary;
  k->params = {{"theta0", theta0}, {"theta1", theta1}};
  return k;
}

KernelPtr make_kernel(const std::string& id, const json& params, std::uint64_t seed) {
  const json p = params.is_null() ? json::object() : params;
  require(p.is_object(), "kernel '" + id + "': params must be an object");
  if (id == "gaussian_copula") {
    std::string margins = "exponential";
    if (p.contains("margins")) {
      require(p.at("margins").is_string(), "gaussian_copula: margins must be a string");
      margins = p.at("margins").get<std::string>();
    }
    return make_gaussian_copula(get_number(p, "rho"), MarginalLaw::from_name(margins));
  }
  if (id == "bev_logistic") return make_bev_logistic(get_number(p, "gamma"));
  if (id == "inverted_bev_logistic") {
    return make_inverted_bev_logistic(get_number(p, "gamma"));
  }
  if (id == "asymmetric_logistic") {
    return make_asymmetric_logistic(get_number(p, "phi1"), get_number(p, "phi2"),
                                    get_number(p, "nu"));
  }
  if (id == "inverted_max_stable") {
    require(p.contains("exponent"), "inverted_max_stable: missing 'exponent'");
    return make_inverted_max_stable(exponent_from_json(p.at("exponent")));
  }
  if (id == "exp_ar") {
    const double g = get_number_or(p, "grid_size", 2048);
    require(g >= 64 && g <= 1e6, "exp_ar: grid_size must lie in [64, 1e6]");
    return make_exp_ar(get_number(p, "phi"), static_cast<std::size_t>(g),
                       get_number_or(p, "tol", 1e-10));
  }
  if (id == "ht_mixture") {
    auto component = [&](const char* key) {
      require(p.contains(key) && p.at(key).is_object() && p.at(key).contains("id"),
              std::string("ht_mixture: '") + key + "' needs an id");
      const json& c = p.at(key);
      return make_kernel(c.at("id").get<std::string>(),
                         c.contains("params") ? c.at("params") : json::object(), seed);
    };
    return make_ht_mixture(get_number(p, "lambda"), component("first"),
                           component("second"));
  }
  if (id == "rootzen_smith") return make_rootzen_smith();
  if (id == "arch_laplace") {
    const double theta0 = get_number(p, "theta0");
    const double theta1 = get_number(p, "theta1");
    require(theta0 > 0.0, "arch_laplace: theta0 must be > 0");
    require(theta1 > 0.0 && theta1 <= 1.0, "arch_laplace: theta1 must lie in (0, 1]");
    MarginalLaw law;
    if (p.contains("grid_file")) {
      law = read_arch_grid(p.at("grid_file").get<std::string>(), theta0, theta1);
    } else {
      const double steps = get_number_or(p, "fit_steps", 1e7);
      require(steps >= 1e4, "arch_laplace: fit_steps must be >= 1e4");
      const auto fit_seed =
          static_cast<std::uint64_t>(get_number_or(p, "fit_seed", static_cast<double>(seed)));
      law = arch_stationary_fit(theta0, theta1, fit_seed, static_cast<std::size_t>(steps));
    }
    auto k = make_arch_laplace(theta0, theta1, law);
    auto mk = std::const_pointer_cast<KernelSpec>(k);
    mk->params = p;
    return k;
  }
  fail(ErrorCategory::kUnsupported, "unknown kernel id '" + id + "'");
}

bool in_support(const KernelSpec& k, double x) {
  if (std::isnan(x) || std::isinf(x)) return false;
  if (k.margin.kind() == MarginKind::kExponential) return x > 0.0;
  return true;
}

double kernel_cdf(const KernelSpec& k, double x, double y) {
  check_x(k, x);
  if (std::isnan(y)) fail(ErrorCategory::kDomain, k.id + ": y is NaN");
  if (y == kInf) return 1.0;
  if (y == -kInf) return 0.0;
  switch (k.kind) {
    case KernelKind::kGaussianCopula: {
      if (k.margin.kind() == MarginKind::kExponential && y <= 0.0) return 0.0;
      const double s = std::sqrt((1.0 - k.rho) * (1.0 + k.rho));
      return norm_cdf((to_gauss(k, y) - k.rho * to_gauss(k, x)) / s);
    }
    case KernelKind::kBevLogistic: {
      if (y <= 0.0) return 0.0;
      // Frechet scale: (1 + r)^{g-1} exp(1/X - V(X, Y)), r = (Y/X)^{-1/g}.
      const double g = k.gamma;
      const double lx = log_exp_to_frechet(x);
      const double ly = log_exp_to_frechet(y);
      const double l1 = log1p_r(-(ly - lx) / g);
      return std::exp((g - 1.0) * l1 - std::expm1(g * l1) * std::exp(-lx));
    }
    case KernelKind::kInvertedBevLogistic: {
      if (y <= 0.0) return 0.0;
      const double g = k.gamma;
      const double l1 = log1p_r((std::log(y) - std::log(x)) / g);
      return -std::expm1((g - 1.0) * l1 - x * std::expm1(g * l1));
    }
    case KernelKind::kAsymmetricLogistic: {
      if (y <= 0.0) return 0.0;
      const double lx = log_exp_to_frechet(x);
      const double ly = log_exp_to_frechet(y);
      const double lr =
          (std::log(k.phi2) - ly - std::log(k.phi1) + lx) / k.nu;
      const double l1 = log1p_r(lr);
      const double front = (1.0 - k.phi1) + k.phi1 * std::exp((k.nu - 1.0) * l1);
      const double expo = -k.phi1 * std::exp(-lx) * std::expm1(k.nu * l1) -
                          (1.0 - k.phi2) * std::exp(-ly);
      return std::min(1.0, front * std::exp(expo));
    }
    case KernelKind::kInvertedMaxStable:
      return inverted_max_stable_cdf(k.exponent, x, y);
    case KernelKind::kExpAR: {
      if (y <= 0.0) return 0.0;
      const double d = exp_ar_u(k, y) - k.phi * exp_ar_u(k, x);
      return d <= 0.0 ? 0.0 : -std::expm1(-d);
    }
    case KernelKind::kHtMixture:
      return k.lambda * kernel_cdf(*k.first, x, y) +
             (1.0 - k.lambda) * kernel_cdf(*k.second, x, y);
    case KernelKind::kRootzenSmith:
      return 0.5 * (y >= -x ? 1.0 : 0.0) + 0.5 * MarginalLaw::laplace().cdf(y);
    case KernelKind::kArchLaplace: {
      const double z = transform(y, MarginalLaw::laplace(), k.stationary);
      return norm_cdf(z / arch_sigma(k, x));
    }
  }
  fail(ErrorCategory::kInternal, "kernel_cdf: unhandled kernel");
}

double kernel_quantile(const KernelSpec& k, double x, double u) {
  check_x(k, x);
  if (!(u > 0.0 && u < 1.0)) {
    fail(ErrorCategory::kDomain, k.id + ": quantile level must lie in (0, 1)");
  }
  switch (k.kind) {
    case KernelKind::kGaussianCopula: {
      const double s = std::sqrt((1.0 - k.rho) * (1.0 + k.rho));
      const double y = from_gauss(k, k.rho * to_gauss(k, x) + s * norm_quantile(u));
      return k.margin.kind() == MarginKind::kExponential ? std::max(y, kMinState) : y;
    }
    case KernelKind::kExpAR: {
      const double w = k.phi * exp_ar_u(k, x) - std::log1p(-u);
      return std::max(-std::log(k.fv->sf_w(w)), kMinState);
    }
    case KernelKind::kArchLaplace: {
      const double z = arch_sigma(k, x) * norm_quantile(u);
      return transform(z, k.stationary, MarginalLaw::laplace());
    }
    default:
      return numeric_quantile(k, x, u);
  }
}

double kernel_sample(const KernelSpec& k, double x, Rng& rng) {
  check_x(k, x);
  switch (k.kind) {
    case KernelKind::kGaussianCopula: {
      const double s = std::sqrt((1.0 - k.rho) * (1.0 + k.rho));
      const double y = from_gauss(k, k.rho * to_gauss(k, x) + s * std_normal(rng));
      return k.margin.kind() == MarginKind::kExponential ? std::max(y, kMinState) : y;
    }
    case KernelKind::kExpAR: {
      const double w = k.phi * exp_ar_u(k, x) + std_exponential(rng);
      return std::max(-std::log(k.fv->sf_w(w)), kMinState);
    }
    case KernelKind::kHtMixture:
      return bernoulli(rng, k.lambda) ? kernel_sample(*k.first, x, rng)
                                      : kernel_sample(*k.second, x, rng);
    case KernelKind::kRootzenSmith:
      // X_{t+1} = -B X_t + (1 - B) L
      if (bernoulli(rng, 0.5)) return -x;
      return MarginalLaw::laplace().sample(rng);
    case KernelKind::kArchLaplace: {
      const double z = arch_sigma(k, x) * std_normal(rng);
      return transform(z, k.stationary, MarginalLaw::laplace());
    }
    default:
      return kernel_quantile(k, x, uniform01(rng));
  }
}

}  // namespace xc
