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

#ifndef XC_CORE_KERNELS_HPP
#define XC_CORE_KERNELS_HPP

#include <memory>
#include <optional>
#include <string>

#include "core/exponent_measure.hpp"
#include "core/margins.hpp"
#include "core/numerics.hpp"
#include "core/rng.hpp"
#include "json.hpp"

namespace xc {

enum class KernelKind {
  kGaussianCopula,
  kBevLogistic,
  kInvertedBevLogistic,
  kAsymmetricLogistic,
  kInvertedMaxStable,
  kExpAR,
  kHtMixture,
  kRootzenSmith,
  kArchLaplace,
};

// Canonical pair a(v) = alpha v, b(v) = v^beta.
struct HtParams {
  double alpha = 0.0;
  double beta = 0.0;
};

class KernelSpec;
using KernelPtr = std::shared_ptr<const KernelSpec>;

// Immutable transition kernel pi(x, .) on a declared marginal scale.
class KernelSpec {
 public:
  KernelKind kind = KernelKind::kGaussianCopula;
  std::string id;
  nlohmann::json params = nlohmann::json::object();
  MarginalLaw margin;

  double rho = 0.0;    // GaussianCopula
  double gamma = 0.0;  // (Inverted)BevLogistic
  double phi1 = 0.0, phi2 = 0.0, nu = 0.0;  // AsymmetricLogistic
  ExponentMeasure exponent;                 // InvertedMaxStable
  double phi = 0.0;                         // ExpAR
  std::shared_ptr<const FvSolution> fv;     // ExpAR
  double lambda = 0.0;                      // HtMixture
  KernelPtr first, second;                  // HtMixture
  double theta0 = 0.0, theta1 = 0.0;        // ArchLaplace
  MarginalLaw stationary;                   // ArchLaplace F_inf

  // Canonical (alpha, beta) under which the kernel has a non-degenerate
  // limit, when it belongs to the canonical family.
  std::optional<HtParams> canonical_norming() const;
};

KernelPtr make_gaussian_copula(double rho, const MarginalLaw& margin);
KernelPtr make_bev_logistic(double gamma);
KernelPtr make_inverted_bev_logistic(double gamma);
KernelPtr make_asymmetric_logistic(double phi1, double phi2, double nu);
KernelPtr make_inverted_max_stable(const ExponentMeasure& e);
KernelPtr make_exp_ar(double phi, std::size_t grid_size = 2048, double tol = 1e-10);
KernelPtr make_ht_mixture(double lambda, KernelPtr first, KernelPtr second);
KernelPtr make_rootzen_smith();
KernelPtr make_arch_laplace(double theta0, double theta1, const MarginalLaw& stationary);

// Catalogue construction from a string id and parameter map. `seed` feeds
// the ARCH stationary fit when the parameters do not carry one.
KernelPtr make_kernel(const std::string& id, const nlohmann::json& params,
                      std::uint64_t seed = 0);

// Pr(X_{t+1} <= y | X_t = x).
double kernel_cdf(const KernelSpec& k, double x, double y);
// Generalized inverse of kernel_cdf in y.
double kernel_quantile(const KernelSpec& k, double x, double u);
double kernel_sample(const KernelSpec& k, double x, Rng& rng);

// True when x lies in the conditioning support of pi(x, .).
bool in_support(const KernelSpec& k, double x);

}  // namespace xc

#endif  // XC_CORE_KERNELS_HPP
