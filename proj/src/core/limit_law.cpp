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

#include "core/limit_law.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/numerics.hpp"
#include "core/special.hpp"

namespace xc {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorCategory::kValidation, msg);
}

double get_number(const json& p, const char* key) {
  if (!p.is_object() || !p.contains(key) || !p.at(key).is_number()) {
    fail(ErrorCategory::kValidation,
         std::string("missing or non-numeric parameter '") + key + "'");
  }
  return p.at(key).get<double>();
}

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

LimitLaw centred_normal(const std::string& id, const json& p, double sd) {
  return LimitLaw(id, p, 0.0, 0.0, [sd](double x) { return norm_cdf(x / sd); },
                  [sd](double q) { return sd * norm_quantile(q); });
}

// G1(x) = [1 + ((phi2/phi1) e^{-x})^{1/nu}]^{nu-1}
std::function<double(double)> g1_cdf(double phi1, double phi2, double nu) {
  const double lr0 = std::log(phi2 / phi1);
  return [=](double x) {
    if (x == -kInf) return 0.0;
    if (x == kInf) return 1.0;
    return std::exp((nu - 1.0) * log1p_exp((lr0 - x) / nu));
  };
}

std::function<double(double)> g1_quantile(double phi1, double phi2, double nu) {
  const double lr0 = std::log(phi2 / phi1);
  return [=](double p) { return lr0 - nu * std::log(std::expm1(std::log(p) / (nu - 1.0))); };
}

// G+(x) = 2 Phi(e^{x/kappa} / sqrt(theta1)) - 1
double g_plus(double x, double kappa, double theta1) {
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  return std::erf(std::exp(x / kappa) / std::sqrt(2.0 * theta1));
}

double g_plus_quantile(double p, double kappa, double theta1) {
  return kappa * std::log(std::sqrt(theta1) * norm_quantile(0.5 * (1.0 + p)));
}

// G-(x) = 2 Phi(-e^{-x/kappa} / sqrt(theta1)) = 1 - G+(-x)
double g_minus(double x, double kappa, double theta1) {
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  return std::erfc(std::exp(-x / kappa) / std::sqrt(2.0 * theta1));
}

double arch_kappa(const json& p, double theta1) {
  if (p.contains("kappa")) return get_number(p, "kappa");
  return arch_tail_index(theta1);
}

LimitLaw sub_law(const json& p, const char* key) {
  require(p.contains(key) && p.at(key).is_object() && p.at(key).contains("id"),
          std::string("limit law: '") + key + "' needs an id");
  const json& c = p.at(key);
  return make_limit_law(c.at("id").get<std::string>(),
                        c.contains("params") ? c.at("params") : json::object());
}

}  // namespace

LimitLaw::LimitLaw(std::string id, json params, double atom_lo, double atom_hi,
                   std::function<double(double)> cdf,
                   std::function<double(double)> quantile, double support_lo)
    : id_(std::move(id)),
      params_(std::move(params)),
      atom_lo_(atom_lo),
      atom_hi_(atom_hi),
      cdf_(std::move(cdf)),
      quantile_(std::move(quantile)),
      support_lo_(support_lo) {
  require(atom_lo >= 0.0 && atom_hi >= 0.0 && atom_lo + atom_hi < 1.0,
          "limit law: atom masses must be >= 0 with total < 1");
}

double LimitLaw::continuous_quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    fail(ErrorCategory::kDomain, "limit law quantile: p must lie in (0, 1)");
  }
  return quantile_(p);
}

double LimitLaw::cdf(double x) const {
  if (x == kInf) return 1.0;
  if (x == -kInf) return atom_lo_;
  return atom_lo_ + g(x);
}

LimitLaw make_limit_law(const std::string& id, const json& params) {
  const json p = params.is_null() ? json::object() : params;
  require(p.is_object(), "limit law '" + id + "': params must be an object");
  if (id == "gaussian_copula_gaussian") {
    const double rho = get_number(p, "rho");
    require(rho > -1.0 && rho < 1.0 && rho != 0.0, "limit law: rho must lie in (-1, 1)\\{0}");
    return centred_normal(id, p, std::sqrt((1.0 - rho) * (1.0 + rho)));
  }
  if (id == "gaussian_copula_exponential") {
    const double rho = get_number(p, "rho");
    require(rho > -1.0 && rho < 1.0 && rho != 0.0, "limit law: rho must lie in (-1, 1)\\{0}");
    return centred_normal(id, p, std::sqrt(2.0 * rho * rho * (1.0 - rho) * (1.0 + rho)));
  }
  if (id == "bev_logistic") {
    const double g = get_number(p, "gamma");
    require(open_unit(g), "bev_logistic: gamma must lie in (0, 1)");
    return LimitLaw(
        id, p, 0.0, 0.0,
        [g](double z) { return std::exp((g - 1.0) * log1p_exp(-z / g)); },
        [g](double q) { return -g * std::log(std::expm1(std::log(q) / (g - 1.0))); });
  }
  if (id == "inverted_bev_logistic") {
    const double g = get_number(p, "gamma");
    require(open_unit(g), "inverted_bev_logistic: gamma must lie in (0, 1)");
    return LimitLaw(
        id, p, 0.0, 0.0,
        [g](double z) {
          if (z <= 0.0) return 0.0;
          return -std::expm1(-g * std::pow(z, 1.0 / g));
        },
        [g](double q) { return std::pow(-std::log1p(-q) / g, g); }, 0.0);
  }
  if (id == "husler_reiss") {
    const double g = get_number(p, "gamma");
    require(g > 0.0, "husler_reiss: gamma must be > 0");
    const double c = g / std::sqrt(8.0 * kPi);
    return LimitLaw(
        id, p, 0.0, 0.0,
        [g, c](double x) { return -std::expm1(-c * std::exp(kSqrt2 * x / g)); },
        [g, c](double q) { return (g / kSqrt2) * std::log(-std::log1p(-q) / c); });
  }
  if (id == "density_decay") {
    const double g = get_number(p, "gamma");
    const double c = get_number(p, "delta") + 2.0 * (1.0 + g);
    require(g > 0.0, "density_decay: gamma must be > 0");
    require(c > 0.0, "density_decay: c = delta + 2(1 + gamma) must be > 0");
    return LimitLaw(
        id, p, 0.0, 0.0, [g, c](double x) { return -std::expm1(-c * std::exp(g * x)); },
        [g, c](double q) { return std::log(-std::log1p(-q) / c) / g; });
  }
  if (id == "asymmetric_logistic_k1" || id == "asymmetric_logistic_g1") {
    const double phi1 = get_number(p, "phi1");
    const double phi2 = get_number(p, "phi2");
    const double nu = get_number(p, "nu");
    require(open_unit(phi1) && open_unit(phi2) && open_unit(nu),
            "asymmetric_logistic: phi1, phi2, nu must lie in (0, 1)");
    const double lo = id == "asymmetric_logistic_k1" ? 1.0 - phi1 : 0.0;
    return LimitLaw(id, p, lo, 0.0, g1_cdf(phi1, phi2, nu), g1_quantile(phi1, phi2, nu));
  }
  if (id == "asymmetric_logistic_k2") {
    const double phi1 = get_number(p, "phi1");
    require(open_unit(phi1), "asymmetric_logistic: phi1 must lie in (0, 1)");
    return LimitLaw(
        id, p, 0.0, phi1, [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); },
        [](double q) { return -std::log1p(-q); }, 0.0);
  }
  if (id == "ht_mixture_k1" || id == "ht_mixture_k2") {
    const double lambda = get_number(p, "lambda");
    require(open_unit(lambda), "ht_mixture: lambda must lie in (0, 1)");
    const bool k1 = id == "ht_mixture_k1";
    LimitLaw inner = sub_law(p, k1 ? "g1" : "g2");
    require(!inner.has_atoms(), "ht_mixture: component law must not have atoms");
    auto cdf = [inner](double x) { return inner.continuous_cdf(x); };
    auto q = [inner](double u) { return inner.continuous_quantile(u); };
    return k1 ? LimitLaw(id, p, 1.0 - lambda, 0.0, cdf, q, inner.support_lo())
              : LimitLaw(id, p, 0.0, lambda, cdf, q, inner.support_lo());
  }
  if (id == "arch_g_plus" || id == "arch_g_minus" || id == "arch_k_plus" ||
      id == "arch_k_minus") {
    const double theta1 = get_number(p, "theta1");
    require(theta1 > 0.0 && theta1 <= 1.0, "arch: theta1 must lie in (0, 1]");
    const double kappa = arch_kappa(p, theta1);
    const bool plus = id == "arch_g_plus" || id == "arch_k_plus";
    std::function<double(double)> cdf, q;
    if (plus) {
      cdf = [=](double x) { return g_plus(x, kappa, theta1); };
      q = [=](double u) { return g_plus_quantile(u, kappa, theta1); };
    } else {
      cdf = [=](double x) { return g_minus(x, kappa, theta1); };
      q = [=](double u) { return -g_plus_quantile(1.0 - u, kappa, theta1); };
    }
    double lo = 0.0, hi = 0.0;
    if (id == "arch_k_plus") lo = 0.5;
    if (id == "arch_k_minus") hi = 0.5;
    return LimitLaw(id, p, lo, hi, cdf, q);
  }
  if (id == "exponential") {
    return LimitLaw(
        id, p, 0.0, 0.0, [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); },
        [](double q) { return -std::log1p(-q); }, 0.0);
  }
  if (id == "laplace") {
    const MarginalLaw l = MarginalLaw::laplace();
    return LimitLaw(id, p, 0.0, 0.0, [l](double x) { return l.cdf(x); },
                    [l](double q) { return l.quantile(q); });
  }
  if (id == "exp_ar") {
    fail(ErrorCategory::kUnsupported,
         "limit law for the exponential autoregressive chain is not available "
         "(no closed form limiting kernel)");
  }
  fail(ErrorCategory::kUnsupported, "unknown limit law '" + id + "'");
}

LimitLaw default_limit_law(const KernelSpec& k) {
  switch (k.kind) {
    case KernelKind::kGaussianCopula:
      if (k.margin.kind() == MarginKind::kGaussian) {
        return make_limit_law("gaussian_copula_gaussian", {{"rho", k.rho}});
      }
      return make_limit_law("gaussian_copula_exponential", {{"rho", k.rho}});
    case KernelKind::kBevLogistic:
      return make_limit_law("bev_logistic", {{"gamma", k.gamma}});
    case KernelKind::kInvertedBevLogistic:
      return make_limit_law("inverted_bev_logistic", {{"gamma", k.gamma}});
    case KernelKind::kAsymmetricLogistic:
      return make_limit_law("asymmetric_logistic_k1",
                            {{"phi1", k.phi1}, {"phi2", k.phi2}, {"nu", k.nu}});
    case KernelKind::kInvertedMaxStable:
      if (k.exponent.kind == ExponentMeasure::Kind::kHuslerReiss) {
        return make_limit_law("husler_reiss", {{"gamma", k.exponent.gamma}});
      }
      if (k.exponent.family == "density_decay") {
        return make_limit_law("density_decay", {{"kappa", k.exponent.params.at(0)},
                                                {"gamma", k.exponent.params.at(1)},
                                                {"delta", k.exponent.params.at(2)}});
      }
      break;
    case KernelKind::kExpAR:
      return make_limit_law("exp_ar", json::object());
    default:
      break;
  }
  fail(ErrorCategory::kUnsupported, "no closed-form limit law for kernel '" + k.id + "'");
}

}  // namespace xc
