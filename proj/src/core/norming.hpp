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

#ifndef XC_CORE_NORMING_HPP
#define XC_CORE_NORMING_HPP

#include <string>

#include "core/kernels.hpp"
#include "core/margins.hpp"
#include "json.hpp"

namespace xc {

enum class SchemeKind {
  kHtCanonical,
  kHuslerReiss,
  kDensityDecay,
  kNegativeHt,
  kAlternatingGaussian,
};

class NormingScheme {
 public:
  SchemeKind kind = SchemeKind::kHtCanonical;
  std::string id;
  nlohmann::json params = nlohmann::json::object();
  MarginKind scale = MarginKind::kExponential;

  double alpha = 0.0, beta = 0.0;          // HtCanonical, NegativeHt (beta)
  double gamma = 0.0;                      // HuslerReiss, DensityDecay
  double kappa = 0.0, delta = 0.0, c = 0.0;  // DensityDecay, c = delta + 2(1 + gamma)
  double alpha_minus = 0.0, alpha_plus = 0.0;  // NegativeHt
  double rho = 0.0;                        // AlternatingGaussian

  // a_t(v), b_t(v) for t >= 1; a_0(v) = v, b_0(v) = 0.
  double a(int t, double v) const;
  double b(int t, double v) const;

  // Husler-Reiss and density-decay schemes are functions of L = log v; their
  // t-step normings are available in log form for any L > 1.
  bool log_scale() const;
  double log_a(int t, double log_v) const;
  double log_b(int t, double log_v) const;

  // One-step norming applied at state w, for the step producing M_{t+1}
  // (the alternating a_+/a_- choice for negative dependence).
  double step_a(int t, double w) const;
  double step_b(int t, double w) const;

  // zeta_t = C(t, 2) + t c (density-decay scheme).
  double zeta(int t) const;
};

NormingScheme make_ht_canonical(double alpha, double beta,
                                MarginKind scale = MarginKind::kExponential);
NormingScheme make_husler_reiss_scheme(double gamma);
NormingScheme make_density_decay_scheme(double kappa, double gamma, double delta);
NormingScheme make_negative_ht(double alpha_minus, double alpha_plus, double beta);
NormingScheme make_alternating_gaussian(double rho);
NormingScheme make_norming(const std::string& id, const nlohmann::json& params);

// psi^a_s, psi^b_s map M_{s-1} to M_s (s >= 2).
class UpdateFunctions {
 public:
  explicit UpdateFunctions(NormingScheme s) : scheme_(std::move(s)) {}
  double psi_a(int s, double x) const;
  double psi_b(int s, double x) const;
  // psi^a == 0 and psi^b(x) = x^beta: the multiplicative regime.
  bool scale_only() const;
  const NormingScheme& scheme() const { return scheme_; }

 private:
  NormingScheme scheme_;
};

UpdateFunctions update_functions(const NormingScheme& s);

struct Remainders {
  double r_a = 0.0;
  double r_b = 0.0;
};

// r^a_{t+1}(v, x), r^b_{t+1}(v, x) for t >= 1. NaN where the norming
// arguments leave their range (e.g. a negative state under x^beta).
Remainders remainder_terms(const NormingScheme& s, int t, double v, double x);
Remainders remainder_terms_log(const NormingScheme& s, int t, double log_v, double x);

// The finite-v quantities whose limits define psi^a_{t+1}, psi^b_{t+1}.
struct PsiEstimate {
  double psi_a = 0.0;
  double psi_b = 0.0;
};
PsiEstimate psi_at(const NormingScheme& s, int t, double v, double x);
PsiEstimate psi_at_log(const NormingScheme& s, int t, double log_v, double x);

// Canonical scheme matching a kernel's own (alpha, beta), if any.
NormingScheme default_scheme(const KernelSpec& k);

}  // namespace xc

#endif  // XC_CORE_NORMING_HPP
