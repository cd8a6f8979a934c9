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

#include "core/margins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/numerics.hpp"
#include "core/special.hpp"

namespace xc {
namespace {

constexpr double kTiny = 1e-300;

void check_probability(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    fail(ErrorCategory::kDomain, std::string(what) +
                                     ": probability must lie in (0,1), got " +
                                     std::to_string(p));
  }
}

}  // namespace

MarginalLaw MarginalLaw::arch_stationary(double theta0, double theta1,
                                         GridFunction grid) {
  if (!(theta0 > 0.0)) {
    fail(ErrorCategory::kValidation, "arch stationary: theta0 must be > 0");
  }
  if (!(theta1 > 0.0 && theta1 <= 1.0)) {
    fail(ErrorCategory::kValidation, "arch stationary: theta1 must lie in (0,1]");
  }
  const auto& x = grid.x();
  const auto& y = grid.y();
  if (!(x.front() < 0.0 && x.back() > 0.0 && y.front() > 0.0 && y.back() < 1.0)) {
    fail(ErrorCategory::kValidation,
         "arch stationary: grid must straddle 0 with F strictly inside (0,1)");
  }
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (y[i + 1] < y[i]) {
      fail(ErrorCategory::kValidation, "arch stationary: F must be nondecreasing");
    }
  }
  auto d = std::make_shared<ArchStationaryData>();
  d->theta0 = theta0;
  d->theta1 = theta1;
  d->kappa = arch_tail_index(theta1);
  d->c = (1.0 - y.back()) * std::pow(x.back(), d->kappa);
  d->c_lo = y.front() * std::pow(-x.front(), d->kappa);
  d->grid = GridFunction(x, y, Interp::kLinear);
  MarginalLaw law(MarginKind::kArchStationary);
  law.arch_ = std::move(d);
  return law;
}

MarginalLaw MarginalLaw::from_name(const std::string& name) {
  if (name == "exponential") return exponential();
  if (name == "laplace") return laplace();
  if (name == "frechet") return frechet();
  if (name == "gaussian") return gaussian();
  fail(ErrorCategory::kValidation, "unknown margin '" + name + "'");
}

std::string MarginalLaw::name() const {
  switch (kind_) {
    case MarginKind::kExponential: return "exponential";
    case MarginKind::kLaplace: return "laplace";
    case MarginKind::kFrechet: return "frechet";
    case MarginKind::kGaussian: return "gaussian";
    case MarginKind::kArchStationary: return "arch_stationary";
  }
  return "unknown";
}

double MarginalLaw::lower_bound() const {
  if (kind_ == MarginKind::kExponential || kind_ == MarginKind::kFrechet) return 0.0;
  return -std::numeric_limits<double>::infinity();
}

double MarginalLaw::cdf(double x) const {
  if (std::isnan(x)) fail(ErrorCategory::kDomain, "cdf: NaN argument");
  switch (kind_) {
    case MarginKind::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-x);
    case MarginKind::kLaplace:
      return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    case MarginKind::kFrechet:
      return x <= 0.0 ? 0.0 : std::exp(-1.0 / x);
    case MarginKind::kGaussian:
      return norm_cdf(x);
    case MarginKind::kArchStationary: {
      const auto& g = arch_->grid;
      if (x <= g.x().front()) return arch_->c_lo * std::pow(-x, -arch_->kappa);
      if (x >= g.x().back()) return 1.0 - arch_->c * std::pow(x, -arch_->kappa);
      return g(x);
    }
  }
  return 0.0;
}

double MarginalLaw::sf(double x) const {
  if (std::isnan(x)) fail(ErrorCategory::kDomain, "sf: NaN argument");
  switch (kind_) {
    case MarginKind::kExponential:
      return x <= 0.0 ? 1.0 : std::exp(-x);
    case MarginKind::kLaplace:
      return x < 0.0 ? 1.0 - 0.5 * std::exp(x) : 0.5 * std::exp(-x);
    case MarginKind::kFrechet:
      return x <= 0.0 ? 1.0 : -std::expm1(-1.0 / x);
    case MarginKind::kGaussian:
      return norm_sf(x);
    case MarginKind::kArchStationary: {
      const auto& g = arch_->grid;
      if (x >= g.x().back()) return arch_->c * std::pow(x, -arch_->kappa);
      if (x <= g.x().front()) return 1.0 - arch_->c_lo * std::pow(-x, -arch_->kappa);
      return 1.0 - g(x);
    }
  }
  return 0.0;
}

double MarginalLaw::quantile(double p) const {
  check_probability(p, "quantile");
  switch (kind_) {
    case MarginKind::kExponential:
      return -std::log1p(-p);
    case MarginKind::kLaplace:
      return p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
    case MarginKind::kFrechet:
      return -1.0 / std::log(p);
    case MarginKind::kGaussian:
      return norm_quantile(p);
    case MarginKind::kArchStationary: {
      const auto& g = arch_->grid;
      if (p <= g.y().front()) return -std::pow(arch_->c_lo / p, 1.0 / arch_->kappa);
      if (p >= g.y().back()) return isf(1.0 - p);
      return g.inverse(p);
    }
  }
  return 0.0;
}

double MarginalLaw::isf(double q) const {
  check_probability(q, "isf");
  switch (kind_) {
    case MarginKind::kExponential:
      return -std::log(q);
    case MarginKind::kLaplace:
      return q < 0.5 ? -std::log(2.0 * q) : std::log(2.0 * (1.0 - q));
    case MarginKind::kFrechet:
      return -1.0 / std::log1p(-q);
    case MarginKind::kGaussian:
      return norm_isf(q);
    case MarginKind::kArchStationary: {
      const auto& g = arch_->grid;
      if (q <= 1.0 - g.y().back()) return std::pow(arch_->c / q, 1.0 / arch_->kappa);
      return quantile(1.0 - q);
    }
  }
  return 0.0;
}

double MarginalLaw::sample(Rng& rng) const {
  const double u = uniform01(rng);
  return u < 0.5 ? quantile(u) : isf(1.0 - u);
}

double transform(double x, const MarginalLaw& from, const MarginalLaw& to) {
  if (from.kind() == to.kind() && from.kind() != MarginKind::kArchStationary) {
    return x;
  }
  double p = from.cdf(x);
  double q = from.sf(x);
  const bool frechet = from.kind() == MarginKind::kFrechet ||
                       to.kind() == MarginKind::kFrechet;
  if (frechet) {
    p = std::max(p, kTiny);
    q = std::max(q, kTiny);
  }
  if (p <= 0.5) return to.quantile(p);
  return to.isf(q);
}

double log_exp_to_frechet(double x) {
  if (!(x > 0.0)) fail(ErrorCategory::kDomain, "exponential scale requires x > 0");
  // log(1 - e^{-x}), clamped so that 1 - e^{-x} >= 1e-300.
  const double l = x > kLn2 ? std::log1p(-std::exp(-x))
                            : std::log(std::max(-std::expm1(-x), kTiny));
  return -std::log(std::max(-l, kTiny));
}

double exp_to_frechet(double x) { return std::exp(log_exp_to_frechet(x)); }

void write_arch_grid(const MarginalLaw& law, const std::string& path) {
  if (law.kind() != MarginKind::kArchStationary) {
    fail(ErrorCategory::kValidation, "write_arch_grid: not an ArchStationary law");
  }
  law.arch()->grid.write_csv(path);
}

MarginalLaw read_arch_grid(const std::string& path, double theta0,
                           double theta1) {
  return MarginalLaw::arch_stationary(
      theta0, theta1, GridFunction::read_csv(path, Interp::kLinear));
}

}  // namespace xc
