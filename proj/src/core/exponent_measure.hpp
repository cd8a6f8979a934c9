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

#ifndef XC_CORE_EXPONENT_MEASURE_HPP
#define XC_CORE_EXPONENT_MEASURE_HPP

#include <functional>
#include <string>
#include <vector>

namespace xc {

// V(x, y) = int_0^1 max(w/x, (1-w)/y) h(w) dw, or the Husler-Reiss closed form.
struct ExponentMeasure {
  enum class Kind { kHuslerReiss, kDensity };
  Kind kind = Kind::kHuslerReiss;
  double gamma = 1.0;            // Husler-Reiss
  std::string family;            // density: "uniform", "symmetric_beta", "density_decay"
  std::vector<double> params;    // density family parameters
  std::function<double(double)> h;

  std::string name() const;
};

ExponentMeasure husler_reiss(double gamma);
ExponentMeasure uniform_density();
// h(w) = C [w (1-w)]^s, s > -1.
ExponentMeasure symmetric_beta_density(double s);
// h(w) = C g(w) g(1-w), g(w) = w^delta exp(-kappa w^{-gamma}).
ExponentMeasure density_decay_density(double kappa, double gamma, double delta);

double exponent_V(const ExponentMeasure& e, double x, double y);
double exponent_V1(const ExponentMeasure& e, double x, double y);

// Integrals of the density, int_a^b h(w) dw and int_a^b w h(w) dw.
double density_mass(const ExponentMeasure& e, double a, double b);
double density_moment(const ExponentMeasure& e, double a, double b);

// Inverted max-stable kernel on exponential margins,
// pi(x, y) = 1 + V_1(1, x/y) exp(x - x V(1, x/y)).
double inverted_max_stable_cdf(const ExponentMeasure& e, double x, double y);

}  // namespace xc

#endif  // XC_CORE_EXPONENT_MEASURE_HPP
