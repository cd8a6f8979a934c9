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

#include "core/exponent_measure.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/numerics.hpp"
#include "core/special.hpp"

namespace xc {
namespace {

constexpr double kQuadTol = 1e-13;

void check_positive(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    fail(ErrorCategory::kDomain, "exponent measure: arguments must be > 0");
  }
}

}  // namespace

std::string ExponentMeasure::name() const {
  return kind == Kind::kHuslerReiss ? "husler_reiss" : family;
}

ExponentMeasure husler_reiss(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    fail(ErrorCategory::kValidation, "husler_reiss: gamma must be > 0");
  }
  ExponentMeasure e;
  e.kind = ExponentMeasure::Kind::kHuslerReiss;
  e.gamma = gamma;
  return e;
}

ExponentMeasure uniform_density() {
  ExponentMeasure e;
  e.kind = ExponentMeasure::Kind::kDensity;
  e.family = "uniform";
  e.h = [](double) { return 2.0; };
  return e;
}

ExponentMeasure symmetric_beta_density(double s) {
  if (!(s > -1.0) || !std::isfinite(s)) {
    fail(ErrorCategory::kValidation, "symmetric_beta: s must be > -1");
  }
  ExponentMeasure e;
  e.kind = ExponentMeasure::Kind::kDensity;
  e.family = "symmetric_beta";
  e.params = {s};
  // 2 / B(s+1, s+1)
  const double log_c = std::log(2.0) + lanczos_lgamma(2.0 * s + 2.0) -
                       2.0 * lanczos_lgamma(s + 1.0);
  e.h = [s, log_c](double w) {
    if (w <= 0.0 || w >= 1.0) return 0.0;
    return std::exp(log_c + s * (std::log(w) + std::log1p(-w)));
  };
  return e;
}

ExponentMeasure density_decay_density(double kappa, double gamma, double delta) {
  if (!(kappa > 0.0) || !(gamma > 0.0) || !std::isfinite(delta)) {
    fail(ErrorCategory::kValidation,
         "density_decay: need kappa > 0, gamma > 0, finite delta");
  }
  auto g = [=](double w) {
    if (w <= 0.0) return 0.0;
    return std::exp(delta * std::log(w) - kappa * std::pow(w, -gamma));
  };
  auto raw = [g](double w) { return g(w) * g(1.0 - w); };
  const double mass = quadrature(raw, 0.0, 1.0, 1e-15);
  if (!(mass > 0.0)) fail(ErrorCategory::kValidation, "density_decay: zero mass");
  ExponentMeasure e;
  e.kind = ExponentMeasure::Kind::kDensity;
  e.family = "density_decay";
  e.params = {kappa, gamma, delta};
  const double scale = 2.0 / mass;
  e.h = [raw, scale](double w) {
    if (w <= 0.0 || w >= 1.0) return 0.0;
    return scale * raw(w);
  };
  return e;
}

double density_mass(const ExponentMeasure& e, double a, double b) {
  return quadrature(e.h, a, b, kQuadTol);
}

double density_moment(const ExponentMeasure& e, double a, double b) {
  return quadrature([&](double w) { return w * e.h(w); }, a, b, kQuadTol);
}

double exponent_V(const ExponentMeasure& e, double x, double y) {
  if (std::isinf(y) && x > 0.0) return 1.0 / x;
  if (std::isinf(x) && y > 0.0) return 1.0 / y;
  check_positive(x, y);
  if (e.kind == ExponentMeasure::Kind::kHuslerReiss) {
    const double g = e.gamma;
    const double l = std::log(y / x);
    return norm_cdf(0.5 * g + l / g) / x + norm_cdf(0.5 * g - l / g) / y;
  }
  // w/x > (1-w)/y  <=>  w > x/(x+y)
  const double ws = x / (x + y);
  const double lower = quadrature([&](double w) { return (1.0 - w) * e.h(w); }, 0.0,
                                  ws, kQuadTol);
  return lower / y + density_moment(e, ws, 1.0) / x;
}

double exponent_V1(const ExponentMeasure& e, double x, double y) {
  if (std::isinf(y) && x > 0.0) return -1.0 / (x * x);
  check_positive(x, y);
  if (e.kind == ExponentMeasure::Kind::kHuslerReiss) {
    const double g = e.gamma;
    return -norm_cdf(0.5 * g + std::log(y / x) / g) / (x * x);
  }
  return -density_moment(e, x / (x + y), 1.0) / (x * x);
}

double inverted_max_stable_cdf(const ExponentMeasure& e, double x, double y) {
  if (!(x > 0.0)) fail(ErrorCategory::kDomain, "inverted max-stable: x must be > 0");
  if (y <= 0.0) return 0.0;
  if (std::isinf(y)) return 1.0;
  // cdf = 1 - A exp(x C - y B) with A = -V_1(1, x/y) = int_{w*}^1 w h,
  // C = 1 - A and B = int_0^{w*} (1-w) h, w* = y/(x+y).
  double log_a, c, b;
  if (e.kind == ExponentMeasure::Kind::kHuslerReiss) {
    const double g = e.gamma;
    const double l = std::log(x / y);
    const double a1 = 0.5 * g + l / g;
    const double b1 = 0.5 * g - l / g;
    c = norm_cdf(-a1);
    log_a = c < 0.5 ? std::log1p(-c) : std::log(norm_cdf(a1));
    b = norm_cdf(b1);
  } else {
    const double ws = y / (x + y);
    c = density_moment(e, 0.0, ws);
    const double a = density_moment(e, ws, 1.0);
    log_a = c < 0.5 ? std::log1p(-c) : std::log(a);
    b = quadrature([&](double w) { return (1.0 - w) * e.h(w); }, 0.0, ws, kQuadTol);
  }
  const double v = -std::expm1(log_a + x * c - y * b);
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace xc
