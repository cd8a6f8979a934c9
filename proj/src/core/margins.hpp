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

#ifndef XC_CORE_MARGINS_HPP
#define XC_CORE_MARGINS_HPP

#include <memory>
#include <string>

#include "core/grid_function.hpp"
#include "core/rng.hpp"

namespace xc {

enum class MarginKind {
  kExponential,
  kLaplace,
  kFrechet,
  kGaussian,
  kArchStationary,
};

// Stationary law of Y_t = (theta0 + theta1 Y_{t-1}^2)^{1/2} W_t: linear
// interpolation of a symmetric (x, F) grid, Pareto tails c |x|^{-kappa}
// beyond the outermost grid points.
struct ArchStationaryData {
  double theta0 = 1.0;
  double theta1 = 0.5;
  double kappa = 2.0;
  double c = 0.0;     // upper tail: 1 - F(x) = c x^{-kappa}
  double c_lo = 0.0;  // lower tail: F(x) = c_lo |x|^{-kappa}
  GridFunction grid;
};

class MarginalLaw {
 public:
  MarginalLaw() : kind_(MarginKind::kExponential) {}

  static MarginalLaw exponential() { return MarginalLaw(MarginKind::kExponential); }
  static MarginalLaw laplace() { return MarginalLaw(MarginKind::kLaplace); }
  static MarginalLaw frechet() { return MarginalLaw(MarginKind::kFrechet); }
  static MarginalLaw gaussian() { return MarginalLaw(MarginKind::kGaussian); }
  // kappa from arch_tail_index(theta1); tail constants by continuity at the
  // outermost grid points.
  static MarginalLaw arch_stationary(double theta0, double theta1,
                                     GridFunction grid);
  // "exponential", "laplace", "frechet", "gaussian".
  static MarginalLaw from_name(const std::string& name);

  MarginKind kind() const { return kind_; }
  std::string name() const;
  const ArchStationaryData* arch() const { return arch_.get(); }

  double cdf(double x) const;
  double sf(double x) const;
  double quantile(double p) const;
  double isf(double q) const;
  double lower_bound() const;
  double sample(Rng& rng) const;

 private:
  explicit MarginalLaw(MarginKind k) : kind_(k) {}

  MarginKind kind_;
  std::shared_ptr<const ArchStationaryData> arch_;
};

// quantile(to, cdf(from, x)), evaluated through the survival function in
// the upper half.
double transform(double x, const MarginalLaw& from, const MarginalLaw& to);

// Exponential to Frechet scale: T(x) = -1/log(1 - e^{-x}), and its log.
double exp_to_frechet(double x);
double log_exp_to_frechet(double x);

void write_arch_grid(const MarginalLaw& law, const std::string& path);
MarginalLaw read_arch_grid(const std::string& path, double theta0,
                           double theta1);

}  // namespace xc

#endif  // XC_CORE_MARGINS_HPP
