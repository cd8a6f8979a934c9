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

#include "core/tailchain.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace xc {
namespace {

constexpr std::uint64_t kTagTailChain = 0x7c01;
constexpr std::uint64_t kTagNonneg = 0x7c02;
constexpr std::uint64_t kTagNegdep = 0x7c03;

void check_sizes(int horizon, std::size_t n) {
  if (horizon < 1) fail(ErrorCategory::kValidation, "tail chain: horizon must be >= 1");
  if (n < 1) fail(ErrorCategory::kValidation, "tail chain: path count must be >= 1");
}

void require_no_atoms(const LimitLaw& k) {
  if (k.has_atoms()) {
    fail(ErrorCategory::kRegime,
         "limit law '" + k.id() +
             "' has mass at +-infinity; use the hidden tail chain simulators");
  }
}

TailChainPaths allocate(int horizon, std::size_t n) {
  TailChainPaths p;
  p.n = n;
  p.horizon = horizon;
  p.e0.resize(n);
  p.m.resize(n * static_cast<std::size_t>(horizon));
  return p;
}

}  // namespace

TailChainPaths simulate_tail_chain(const UpdateFunctions& u, const LimitLaw& k, int horizon,
                                   std::size_t n, const Exec& exec) {
  check_sizes(horizon, n);
  require_no_atoms(k);
  TailChainPaths p = allocate(horizon, n);
  for_each_chunk(n, exec.workers, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
    Rng rng = make_stream(exec.seed, kTagTailChain, chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      p.e0[i] = std_exponential(rng);
      double* m = &p.m[i * horizon];
      m[0] = k.sample_continuous(rng);
      for (int t = 1; t < horizon; ++t) {
        const double eps = k.sample_continuous(rng);
        m[t] = u.psi_a(t + 1, m[t - 1]) + u.psi_b(t + 1, m[t - 1]) * eps;
      }
    }
  });
  return p;
}

TailChainPaths simulate_nonneg_tail_chain(const UpdateFunctions& u, const LimitLaw& k,
                                          int horizon, std::size_t n, const Exec& exec) {
  check_sizes(horizon, n);
  require_no_atoms(k);
  if (k.support_lo() < 0.0 || k.continuous_cdf(0.0) > 0.0) {
    fail(ErrorCategory::kRegime,
         "limit law '" + k.id() + "' puts mass on (-inf, 0]; the nonnegative regime needs "
         "K supported on (0, inf)");
  }
  TailChainPaths p = allocate(horizon, n);
  for_each_chunk(n, exec.workers, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
    Rng rng = make_stream(exec.seed, kTagNonneg, chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      p.e0[i] = std_exponential(rng);
      double* m = &p.m[i * horizon];
      m[0] = k.sample_continuous(rng);
      for (int t = 1; t < horizon; ++t) {
        m[t] = u.psi_b(t + 1, m[t - 1]) * k.sample_continuous(rng);
      }
    }
  });
  return p;
}

TailChainPaths simulate_negdep_tail_chain(const UpdateFunctions& u, const LimitLaw& k_minus,
                                          const LimitLaw& k_plus, int horizon, std::size_t n,
                                          const Exec& exec) {
  check_sizes(horizon, n);
  require_no_atoms(k_minus);
  require_no_atoms(k_plus);
  TailChainPaths p = allocate(horizon, n);
  for_each_chunk(n, exec.workers, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
    Rng rng = make_stream(exec.seed, kTagNegdep, chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      p.e0[i] = std_exponential(rng);
      double* m = &p.m[i * horizon];
      m[0] = k_minus.sample_continuous(rng);
      for (int t = 1; t < horizon; ++t) {
        // m[t] is M_{t+1}, produced from M_t.
        const LimitLaw& law = (t % 2 == 1) ? k_plus : k_minus;
        const double eps = law.sample_continuous(rng);
        m[t] = u.psi_a(t + 1, m[t - 1]) + u.psi_b(t + 1, m[t - 1]) * eps;
      }
    }
  });
  return p;
}

std::vector<double> reconstruct_paths(double x0, const NormingScheme& s,
                                      const TailChainPaths& paths) {
  std::vector<double> at(paths.horizon), bt(paths.horizon);
  for (int t = 1; t <= paths.horizon; ++t) {
    at[t - 1] = s.a(t, x0);
    bt[t - 1] = s.b(t, x0);
    if (!std::isfinite(at[t - 1]) || !(bt[t - 1] > 0.0)) {
      fail(ErrorCategory::kDomain, s.id + ": x0 outside the norming range");
    }
  }
  std::vector<double> out(paths.m.size());
  for (std::size_t i = 0; i < paths.n; ++i) {
    for (int t = 0; t < paths.horizon; ++t) {
      const std::size_t j = i * paths.horizon + t;
      out[j] = at[t] + bt[t] * paths.m[j];
    }
  }
  return out;
}

std::vector<int> detect_changepoints(const std::vector<double>& path,
                                     const ChangePointRule& rule) {
  if (path.empty()) fail(ErrorCategory::kDomain, "detect_changepoints: empty path");
  std::vector<int> out;
  bool below = true;  // alternating rule: looking for X_t <= c X_{t-1}
  for (std::size_t t = 1; t < path.size(); ++t) {
    const double prev = path[t - 1];
    const double cur = path[t];
    bool hit = false;
    switch (rule.kind) {
      case ChangePointRule::Kind::kRatioThreshold:
        hit = cur <= rule.c * prev;
        break;
      case ChangePointRule::Kind::kAlternatingRatio:
        hit = below ? cur <= rule.c * prev : cur > rule.c * prev;
        if (hit) below = !below;
        break;
      case ChangePointRule::Kind::kSignChange:
        hit = std::signbit(cur) != std::signbit(prev);
        break;
      case ChangePointRule::Kind::kValueChange:
        hit = cur != -prev;
        break;
    }
    if (hit) out.push_back(static_cast<int>(t));
  }
  return out;
}

}  // namespace xc
