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

#ifndef XC_CORE_HIDDEN_HPP
#define XC_CORE_HIDDEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/limit_law.hpp"
#include "core/rng.hpp"

namespace xc {

// One hidden tail chain path, t = 1..T. Atoms never enter the values; the
// regime code says which branch of the update produced M_t.
struct HiddenPath {
  std::vector<double> m;
  std::vector<std::uint8_t> b;            // B_0..B_T; 2 where B is drawn inside a kernel
  std::vector<std::uint8_t> regime;
  std::vector<std::uint8_t> changepoint;  // 1 at t = T^B_k
  std::vector<double> innovation;         // NaN where the step has none
  std::vector<double> aux;                // model-specific per-step value (see below)
};

struct HiddenChainPaths {
  std::string model;
  std::vector<std::string> regime_names;
  std::string aux_name;  // empty when unused
  int horizon = 0;
  std::vector<HiddenPath> paths;

  std::vector<int> changepoints(std::size_t i) const;
};

// Asymmetric logistic chain with B_t ~ Ber(phi1), T^B = inf{t : B_t = 0}:
// G1 random walk before T^B, fresh Exp(1) at T^B, kernel after.
HiddenChainPaths hidden_asym_logistic(double phi1, double phi2, double nu, int horizon,
                                      std::size_t n, const Exec& exec);

struct HtMixtureHidden {
  double lambda = 0.5;
  double alpha1 = 0.0, beta1 = 0.0;
  double alpha2 = 0.0, beta2 = 0.0;
  LimitLaw g1, g2;
};

// Regime codes for the mixture chain.
enum HtMixtureRegime : std::uint8_t {
  kInitG1 = 0,
  kInitG2 = 1,
  kC1 = 2,  // alpha1 M + (n_t)^beta1 eps1
  kC2 = 3,  // alpha2 M + (n_t)^beta2 eps2
  kC3 = 4,  // (n_t)^beta1 eps1
  kC4 = 5,  // (n_t)^beta2 eps2
  kC5 = 6,  // alpha1 M
  kC6 = 7,  // alpha2 M
};

void validate(const HtMixtureHidden& p);
// Mixture hidden chain for a given latent sequence b = (B_0 = 1, B_1, ..., B_T).
// aux holds n^alpha_t, the product of the component alphas over steps 1..t.
HiddenPath hidden_ht_mixture_path(const HtMixtureHidden& p, const std::vector<std::uint8_t>& b,
                                  Rng& rng);
HiddenChainPaths hidden_ht_mixture(const HtMixtureHidden& p, int horizon, std::size_t n,
                                   const Exec& exec);
// n^alpha_t from the change-point sums S_k^odd, S_k^even.
double ht_mixture_norming_product(double alpha1, double alpha2,
                                  const std::vector<int>& changepoints, int t);

// M_t = 0 before T ~ Geometric(1/2), standard Laplace at T, kernel after.
HiddenChainPaths hidden_rootzen_smith(int horizon, std::size_t n, const Exec& exec);

// M_{t+1} = s_{t+1} M_t + eps_{t+1} with M_0 = 0; aux holds s_t, which is -1
// exactly at the change-points T^B_k (including t = 1).
HiddenChainPaths hidden_arch(double theta0, double theta1, int horizon, std::size_t n,
                             const Exec& exec);

}  // namespace xc

#endif  // XC_CORE_HIDDEN_HPP
