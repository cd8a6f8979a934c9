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

#ifndef XC_CORE_DIAGNOSTICS_HPP
#define XC_CORE_DIAGNOSTICS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/kernels.hpp"
#include "core/limit_law.hpp"
#include "core/norming.hpp"
#include "core/rng.hpp"
#include "core/tailchain.hpp"

namespace xc {

struct InitSpec {
  enum class Kind { kFixed, kExceedance };
  Kind kind = Kind::kFixed;
  double value = 0.0;

  static InitSpec fixed(double x0) { return {Kind::kFixed, x0}; }
  static InitSpec exceedance(double u) { return {Kind::kExceedance, u}; }
};

// n paths (X_0, ..., X_T); x[i * (T + 1) + t].
struct XPaths {
  std::size_t n = 0;
  int horizon = 0;
  std::vector<double> x;

  double at(std::size_t i, int t) const { return x[i * (horizon + 1) + t]; }
  std::vector<double> path(std::size_t i) const;
};

XPaths conditional_forward_sim(const KernelSpec& k, const MarginalLaw& law, InitSpec init,
                               int horizon, std::size_t n, const Exec& exec);

// (X_t - a_t(v)) / b_t(v) given X_0 = v.
std::vector<double> normalized_samples(const KernelSpec& k, double v, const NormingScheme& s,
                                       int t, std::size_t n, const Exec& exec);

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// KS against a limit law with atoms: samples below -m and above m are
// counted as atom mass, the rest are compared with the continuous part.
struct LimitFit {
  double ks = 0.0;
  double atom_lo = 0.0;  // empirical mass below -m
  double atom_hi = 0.0;  // empirical mass above m
};
LimitFit fit_limit_law(const std::vector<double>& samples, const LimitLaw& law,
                       double m = 20.0);

struct ConvergenceRow {
  double v = 0.0;
  std::size_t n = 0;
  double ks = 0.0;
  double atom_lo = 0.0;
  double atom_hi = 0.0;
  std::uint64_t seed = 0;
};

struct ConvergenceTable {
  std::string kernel;
  std::string scheme;
  int t = 1;
  std::vector<ConvergenceRow> rows;
};

// t = 1 compares with K; t >= 2 with the simulated tail chain M_t.
ConvergenceTable convergence_table(const KernelSpec& k, const NormingScheme& s,
                                   const LimitLaw& law, int t, const std::vector<double>& v_grid,
                                   std::size_t n, const Exec& exec, double m = 20.0);

// Tail chain M_t for a scheme (negative-dependence and scale-only schemes
// use their own simulators).
TailChainPaths simulate_for_scheme(const NormingScheme& s, const LimitLaw& law, int horizon,
                                   std::size_t n, const Exec& exec);

struct EnvelopeRow {
  std::string source;
  int t = 0;
  double q025 = 0.0;
  double mean = 0.0;
  double q975 = 0.0;
};

struct QuantileEnvelope {
  std::vector<EnvelopeRow> rows;
  bool low_precision = false;  // fewer than 100 paths
};

// values[i * horizon + t - 1] for t = 1..horizon.
QuantileEnvelope quantile_envelope(const std::vector<double>& values, std::size_t n,
                                   int horizon, const std::string& source);
// Type-7 empirical quantile of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double p);

struct ChiRow {
  double u = 0.0;
  double estimate = 0.0;
  std::size_t n_exceed = 0;
  bool flagged = false;  // fewer than 50 exceedances
};

std::vector<ChiRow> chi_estimate(const KernelSpec& k, const MarginalLaw& law, int t,
                                 const std::vector<double>& u_grid, std::size_t n,
                                 const Exec& exec);

// TV distance between observed first change-point times (0 = none within
// the horizon) and Pr(T = t) = (1 - p)^{t-1} p, with a bin for T > horizon.
double changepoint_law_check(const std::vector<int>& first_times, int horizon, double p);

}  // namespace xc

#endif  // XC_CORE_DIAGNOSTICS_HPP
