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

#include "core/hidden.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/kernels.hpp"
#include "core/numerics.hpp"
#include "core/parallel.hpp"

namespace xc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kTagAsym = 0x4d05;
constexpr std::uint64_t kTagMixture = 0x4d06;
constexpr std::uint64_t kTagRootzen = 0x4d07;
constexpr std::uint64_t kTagArch = 0x4d08;

void check_sizes(int horizon, std::size_t n) {
  if (horizon < 1) fail(ErrorCategory::kValidation, "hidden chain: horizon must be >= 1");
  if (n < 1) fail(ErrorCategory::kValidation, "hidden chain: path count must be >= 1");
}

HiddenPath blank(int horizon, bool aux) {
  HiddenPath p;
  p.m.assign(horizon, 0.0);
  p.b.assign(horizon + 1, 1);
  p.regime.assign(horizon, 0);
  p.changepoint.assign(horizon, 0);
  p.innovation.assign(horizon, kNaN);
  if (aux) p.aux.assign(horizon, 0.0);
  return p;
}

template <typename F>
void run_paths(HiddenChainPaths& out, std::size_t n, const Exec& exec, std::uint64_t tag,
               F&& one) {
  out.paths.resize(n);
  for_each_chunk(n, exec.workers, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
    Rng rng = make_stream(exec.seed, tag, chunk);
    for (std::size_t i = lo; i < hi; ++i) out.paths[i] = one(rng);
  });
}

}  // namespace

std::vector<int> HiddenChainPaths::changepoints(std::size_t i) const {
  std::vector<int> cps;
  const auto& f = paths.at(i).changepoint;
  for (std::size_t t = 0; t < f.size(); ++t) {
    if (f[t]) cps.push_back(static_cast<int>(t + 1));
  }
  return cps;
}

HiddenChainPaths hidden_asym_logistic(double phi1, double phi2, double nu, int horizon,
                                      std::size_t n, const Exec& exec) {
  check_sizes(horizon, n);
  const KernelPtr kernel = make_asymmetric_logistic(phi1, phi2, nu);
  const LimitLaw g1 = make_limit_law("asymmetric_logistic_g1",
                                     {{"phi1", phi1}, {"phi2", phi2}, {"nu", nu}});
  HiddenChainPaths out;
  out.model = "asymmetric_logistic";
  out.regime_names = {"walk", "restart", "kernel"};
  out.horizon = horizon;
  run_paths(out, n, exec, kTagAsym, [&](Rng& rng) {
    HiddenPath p = blank(horizon, false);
    int tb = horizon + 1;
    for (int t = 1; t <= horizon; ++t) {
      p.b[t] = bernoulli(rng, phi1) ? 1 : 0;
      if (p.b[t] == 0 && tb > horizon) tb = t;
    }
    for (int t = 1; t <= horizon; ++t) {
      const double prev = t > 1 ? p.m[t - 2] : 0.0;
      if (t < tb) {
        const double eps = g1.sample_continuous(rng);
        p.m[t - 1] = prev + eps;
        p.innovation[t - 1] = eps;
        p.regime[t - 1] = 0;
      } else if (t == tb) {
        const double e = std_exponential(rng);
        p.m[t - 1] = e;
        p.innovation[t - 1] = e;
        p.regime[t - 1] = 1;
        p.changepoint[t - 1] = 1;
      } else {
        p.m[t - 1] = kernel_sample(*kernel, prev, rng);
        p.regime[t - 1] = 2;
      }
    }
    return p;
  });
  return out;
}

void validate(const HtMixtureHidden& p) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) fail(ErrorCategory::kValidation, msg);
  };
  require(p.lambda > 0.0 && p.lambda < 1.0, "ht_mixture: lambda must lie in (0, 1)");
  require(p.alpha1 > p.alpha2, "ht_mixture: requires alpha1 > alpha2");
  require(p.alpha2 >= 0.0 && p.alpha1 <= 1.0, "ht_mixture: alphas must lie in [0, 1]");
  require(p.beta1 >= 0.0 && p.beta1 < 1.0, "ht_mixture: beta1 must lie in [0, 1)");
  require(p.beta2 >= 0.0 && p.beta2 < 1.0, "ht_mixture: beta2 must lie in [0, 1)");
  require(!p.g1.id().empty() && !p.g2.id().empty(), "ht_mixture: G1 and G2 are required");
  require(!p.g1.has_atoms() && !p.g2.has_atoms(), "ht_mixture: G1, G2 must not have atoms");
}

HiddenPath hidden_ht_mixture_path(const HtMixtureHidden& p, const std::vector<std::uint8_t>& b,
                                  Rng& rng) {
  if (b.size() < 2 || b[0] != 1) {
    fail(ErrorCategory::kValidation, "ht_mixture scenario: need B_0 = 1 and T >= 1");
  }
  const int horizon = static_cast<int>(b.size()) - 1;
  HiddenPath out = blank(horizon, true);
  out.b = b;
  std::vector<int> cps;
  double nal = 1.0;
  for (int t = 1; t <= horizon; ++t) {
    if (b[t] > 1) fail(ErrorCategory::kValidation, "ht_mixture scenario: B_t must be 0 or 1");
    if (b[t] != b[t - 1]) {
      cps.push_back(t);
      out.changepoint[t - 1] = 1;
    }
    nal *= b[t] ? p.alpha1 : p.alpha2;
    out.aux[t - 1] = nal;
  }
  const int inf = std::numeric_limits<int>::max();
  const int t1 = cps.size() > 0 ? cps[0] : inf;
  const int t2 = cps.size() > 1 ? cps[1] : inf;

  if (t1 > 1) {
    out.m[0] = out.innovation[0] = p.g1.sample_continuous(rng);
    out.regime[0] = kInitG1;
  } else {
    out.m[0] = out.innovation[0] = p.g2.sample_continuous(rng);
    out.regime[0] = kInitG2;
  }
  const double b1 = p.beta1, b2 = p.beta2;
  std::size_t k = 0;  // change-points <= t+1
  for (int t = 1; t < horizon; ++t) {
    const int s = t + 1;
    while (k < cps.size() && cps[k] <= s) ++k;
    const double mt = out.m[t - 1];
    const double nt = out.aux[t - 1];
    const bool even = k % 2 == 0;
    std::uint8_t c;
    if ((k == 0 || (even && b1 >= b2)) && !(t1 == 1 && s == t2 && b1 > b2)) {
      c = kC1;
    } else if (((t1 == 1 && s < t2 && b1 > b2) || (!even && b1 <= b2)) &&
               !(s == t1 && b1 < b2)) {
      c = kC2;
    } else if (t1 == 1 && s == t2 && b1 > b2) {
      c = kC3;
    } else if (s == t1 && b1 < b2) {
      c = kC4;
    } else if (even && b1 < b2) {
      c = kC5;
    } else if (!even && b1 > b2 && !(t1 == 1 && k == 1)) {
      c = kC6;
    } else {
      fail(ErrorCategory::kInternal, "ht_mixture: no update case matched");
    }
    double v = 0.0, eps = kNaN;
    switch (c) {
      case kC1:
        eps = p.g1.sample_continuous(rng);
        v = p.alpha1 * mt + std::pow(nt, b1) * eps;
        break;
      case kC2:
        eps = p.g2.sample_continuous(rng);
        v = p.alpha2 * mt + std::pow(nt, b2) * eps;
        break;
      case kC3:
        eps = p.g1.sample_continuous(rng);
        v = std::pow(nt, b1) * eps;
        break;
      case kC4:
        eps = p.g2.sample_continuous(rng);
        v = std::pow(nt, b2) * eps;
        break;
      case kC5:
        v = p.alpha1 * mt;
        break;
      default:
        v = p.alpha2 * mt;
        break;
    }
    out.m[t] = v;
    out.innovation[t] = eps;
    out.regime[t] = c;
  }
  return out;
}

HiddenChainPaths hidden_ht_mixture(const HtMixtureHidden& p, int horizon, std::size_t n,
                                   const Exec& exec) {
  check_sizes(horizon, n);
  validate(p);
  HiddenChainPaths out;
  out.model = "ht_mixture";
  out.regime_names = {"init_G1", "init_G2", "C1", "C2", "C3", "C4", "C5", "C6"};
  out.aux_name = "n_alpha";
  out.horizon = horizon;
  run_paths(out, n, exec, kTagMixture, [&](Rng& rng) {
    std::vector<std::uint8_t> b(horizon + 1, 1);
    for (int t = 1; t <= horizon; ++t) b[t] = bernoulli(rng, p.lambda) ? 1 : 0;
    return hidden_ht_mixture_path(p, b, rng);
  });
  return out;
}

double ht_mixture_norming_product(double alpha1, double alpha2,
                                  const std::vector<int>& changepoints, int t) {
  double s_odd = 0.0, s_even = 0.0;
  int k = 0;
  for (int tp : changepoints) {
    if (tp > t) break;
    ++k;
    (k % 2 == 1 ? s_odd : s_even) += tp;
  }
  const double tt = t;
  if (k == 0) return std::pow(alpha1, tt);
  if (k % 2 == 1) {
    return std::pow(alpha1, (s_odd - 1.0) - s_even) *
           std::pow(alpha2, tt + s_even - (s_odd - 1.0));
  }
  return std::pow(alpha1, tt + s_odd - s_even) * std::pow(alpha2, s_even - s_odd);
}

HiddenChainPaths hidden_rootzen_smith(int horizon, std::size_t n, const Exec& exec) {
  check_sizes(horizon, n);
  const KernelPtr kernel = make_rootzen_smith();
  const MarginalLaw laplace = MarginalLaw::laplace();
  HiddenChainPaths out;
  out.model = "rootzen_smith";
  out.regime_names = {"zero", "restart", "kernel"};
  out.horizon = horizon;
  run_paths(out, n, exec, kTagRootzen, [&](Rng& rng) {
    HiddenPath p = blank(horizon, false);
    // T = inf{t >= 1 : B_{t-1} = 0}
    int tx = horizon + 1;
    for (int t = 1; t <= horizon; ++t) {
      p.b[t - 1] = bernoulli(rng, 0.5) ? 1 : 0;
      if (p.b[t - 1] == 0) {
        tx = t;
        break;
      }
    }
    for (int t = tx; t <= horizon; ++t) p.b[t] = 2;
    for (int t = 1; t <= horizon; ++t) {
      if (t < tx) {
        p.m[t - 1] = 0.0;
        p.regime[t - 1] = 0;
      } else if (t == tx) {
        const double l = laplace.sample(rng);
        p.m[t - 1] = l;
        p.innovation[t - 1] = l;
        p.regime[t - 1] = 1;
        p.changepoint[t - 1] = 1;
      } else {
        p.m[t - 1] = kernel_sample(*kernel, p.m[t - 2], rng);
        p.regime[t - 1] = 2;
      }
    }
    return p;
  });
  return out;
}

HiddenChainPaths hidden_arch(double theta0, double theta1, int horizon, std::size_t n,
                             const Exec& exec) {
  check_sizes(horizon, n);
  if (!(theta0 > 0.0)) fail(ErrorCategory::kValidation, "arch: theta0 must be > 0");
  if (!(theta1 > 0.0 && theta1 <= 1.0)) {
    fail(ErrorCategory::kValidation, "arch: theta1 must lie in (0, 1]");
  }
  const double kappa = arch_tail_index(theta1);
  const nlohmann::json lp = {{"theta1", theta1}, {"kappa", kappa}};
  const LimitLaw g_plus = make_limit_law("arch_g_plus", lp);
  const LimitLaw g_minus = make_limit_law("arch_g_minus", lp);
  HiddenChainPaths out;
  out.model = "arch";
  out.regime_names = {"G+", "G-"};
  out.aux_name = "sign";
  out.horizon = horizon;
  run_paths(out, n, exec, kTagArch, [&](Rng& rng) {
    HiddenPath p = blank(horizon, true);
    int k = 0;
    double prev = 0.0;
    for (int t = 1; t <= horizon; ++t) {
      p.b[t] = bernoulli(rng, 0.5) ? 1 : 0;
      const bool cp = p.b[t] != p.b[t - 1];
      if (cp) ++k;
      const bool plus = k % 2 == 0;
      const double s = cp ? -1.0 : 1.0;
      const double eps = plus ? g_plus.sample_continuous(rng) : g_minus.sample_continuous(rng);
      p.m[t - 1] = s * prev + eps;
      p.innovation[t - 1] = eps;
      p.regime[t - 1] = plus ? 0 : 1;
      p.changepoint[t - 1] = cp ? 1 : 0;
      p.aux[t - 1] = s;
      prev = p.m[t - 1];
    }
    return p;
  });
  return out;
}

}  // namespace xc
