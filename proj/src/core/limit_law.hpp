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

#ifndef XC_CORE_LIMIT_LAW_HPP
#define XC_CORE_LIMIT_LAW_HPP

#include <functional>
#include <limits>
#include <string>

#include "core/kernels.hpp"
#include "core/norming.hpp"
#include "core/rng.hpp"
#include "json.hpp"

namespace xc {

// K = atom_lo delta_{-inf} + (1 - atom_lo - atom_hi) G_c + atom_hi delta_{+inf},
// with G_c a proper continuous distribution function.
class LimitLaw {
 public:
  LimitLaw() = default;
  LimitLaw(std::string id, nlohmann::json params, double atom_lo, double atom_hi,
           std::function<double(double)> cdf, std::function<double(double)> quantile,
           double support_lo = -std::numeric_limits<double>::infinity());

  const std::string& id() const { return id_; }
  const nlohmann::json& params() const { return params_; }
  double atom_lo() const { return atom_lo_; }
  double atom_hi() const { return atom_hi_; }
  bool has_atoms() const { return atom_lo_ > 0.0 || atom_hi_ > 0.0; }
  double continuous_mass() const { return 1.0 - atom_lo_ - atom_hi_; }
  // Left end of the continuous component's support.
  double support_lo() const { return support_lo_; }

  // Normalized continuous component.
  double continuous_cdf(double x) const { return cdf_(x); }
  double continuous_quantile(double p) const;
  double sample_continuous(Rng& rng) const { return quantile_(uniform01(rng)); }
  // G(x) = continuous_mass * G_c(x), range [0, 1 - atoms].
  double g(double x) const { return continuous_mass() * cdf_(x); }
  // Full distribution function on the extended reals.
  double cdf(double x) const;

 private:
  std::string id_;
  nlohmann::json params_;
  double atom_lo_ = 0.0;
  double atom_hi_ = 0.0;
  std::function<double(double)> cdf_;
  std::function<double(double)> quantile_;
  double support_lo_ = -std::numeric_limits<double>::infinity();
};

LimitLaw make_limit_law(const std::string& id, const nlohmann::json& params);

// Limit law paired with the kernel's default norming, when it is known.
LimitLaw default_limit_law(const KernelSpec& k);

}  // namespace xc

#endif  // XC_CORE_LIMIT_LAW_HPP
