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

#ifndef XC_CORE_TAILCHAIN_HPP
#define XC_CORE_TAILCHAIN_HPP

#include <cstddef>
#include <vector>

#include "core/limit_law.hpp"
#include "core/norming.hpp"
#include "core/rng.hpp"

namespace xc {

// n paths of (E_0, M_1, ..., M_T); m is row-major, m[i * horizon + t - 1].
struct TailChainPaths {
  std::size_t n = 0;
  int horizon = 0;
  std::vector<double> e0;
  std::vector<double> m;

  double at(std::size_t i, int t) const { return m[i * horizon + (t - 1)]; }
};

// M_1 ~ K, M_{t+1} = psi^a_{t+1}(M_t) + psi^b_{t+1}(M_t) eps_{t+1}, eps ~ K.
TailChainPaths simulate_tail_chain(const UpdateFunctions& u, const LimitLaw& k, int horizon,
                                   std::size_t n, const Exec& exec);
// M_{t+1} = psi^b_{t+1}(M_t) eps_{t+1}; K must live on (0, inf).
TailChainPaths simulate_nonneg_tail_chain(const UpdateFunctions& u, const LimitLaw& k,
                                          int horizon, std::size_t n, const Exec& exec);
// M_1 ~ K_-, eps_{t+1} ~ K_+ for t odd and K_- for t even.
TailChainPaths simulate_negdep_tail_chain(const UpdateFunctions& u, const LimitLaw& k_minus,
                                          const LimitLaw& k_plus, int horizon, std::size_t n,
                                          const Exec& exec);

// X^TC_t = a_t(x0) + b_t(x0) M_t, same layout as paths.m.
std::vector<double> reconstruct_paths(double x0, const NormingScheme& s,
                                      const TailChainPaths& paths);

struct ChangePointRule {
  enum class Kind {
    kRatioThreshold,    // X_t <= c X_{t-1}
    kAlternatingRatio,  // alternates between "<=" and ">" after each hit
    kSignChange,        // sign(X_t) != sign(X_{t-1})
    kValueChange,       // X_t != -X_{t-1}: end of strict alternation
  };
  Kind kind = Kind::kRatioThreshold;
  double c = 0.5;
};

// path = (X_0, ..., X_T); returns the ordered change-point times in [1, T].
std::vector<int> detect_changepoints(const std::vector<double>& path,
                                     const ChangePointRule& rule);

}  // namespace xc

#endif  // XC_CORE_TAILCHAIN_HPP
