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

#include "core/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace xc {
namespace {

constexpr std::uint64_t kTagForward = 0xd1a0;
constexpr std::uint64_t kTagConvRow = 0xd1a1;
constexpr std::uint64_t kTagConvRef = 0xd1a2;
constexpr std::uint64_t kTagChi = 0xd1a3;

}  // namespace

std::vector<double> XPaths::path(std::size_t i) const {
  const auto* p = &x[i * (horizon + 1)];
  return std::vector<double>(p, p + horizon + 1);
}

XPaths conditional_forward_sim(const KernelSpec& k, const MarginalLaw& law, InitSpec init,
                               int horizon, std::size_t n, const Exec& exec) {
  if (horizon < 0) fail(ErrorCategory::kValidation, "forward simulation: horizon must be >= 0");
  if (n < 1) fail(ErrorCategory::kValidation, "forward simulation: path count must be >= 1");
  if (law.kind() != k.margin.kind()) {
    fail(ErrorCategory::kValidation, "forward simulation: law '" + law.name() +
                                         "' does not match the kernel scale '" +
                                         k.margin.name() + "'");
  }
  double tail = 0.0;
  if (init.kind == InitSpec::Kind::kExceedance) {
    tail = law.sf(init.value);
    if (!(tail > 0.0)) {
      fail(ErrorCategory::kDomain, "forward simulation: threshold beyond the numeric range");
    }
  } else if (!in_support(k, init.value)) {
    fail(ErrorCategory::kDomain, "forward simulation: x0 outside the kernel support");
  }
  XPaths out;
  out.n = n;
  out.horizon = horizon;
  out.x.resize(n * static_cast<std::size_t>(horizon + 1));
  for_each_chunk(n, exec.workers, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
    Rng rng = make_stream(exec.seed, kTagForward, chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      double* x = &out.x[i * (horizon + 1)];
      x[0] = init.kind == InitSpec::Kind::kFixed ? init.value
                                                 : law.isf(tail * uniform01(rng));
      for (int t = 1; t <= horizon; ++t) x[t] = kernel_sample(k, x[t - 1], rng);
    }
  });
  return out;
}

std::vector<double> normalized_samples(const KernelSpec& k, double v, const NormingScheme& s,
                                       int t, std::size_t n, const Exec& exec) {
  if (t < 1) fail(ErrorCategory::kValidation, "normalized samples: t must be >= 1");
  const double a = s.a(t, v);
  const double b = s.b(t, v);
  if (!std::isfinite(a) || !(b > 0.0) || !std::isfinite(b)) {
    fail(ErrorCategory::kDomain, s.id + ": v outside the norming range");
  }
  const XPaths xp = conditional_forward_sim(k, k.margin, InitSpec::fixed(v), t, n, exec);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (xp.at(i, t) - a) / b;
  return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) fail(ErrorCategory::kDomain, "ks_distance: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return std::min(d, 1.0);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) fail(ErrorCategory::kDomain, "ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

LimitFit fit_limit_law(const std::vector<double>& samples, const LimitLaw& law, double m) {
  if (samples.empty()) fail(ErrorCategory::kDomain, "fit_limit_law: empty sample");
  LimitFit f;
  std::vector<double> mid;
  mid.reserve(samples.size());
  std::size_t lo = 0, hi = 0;
  for (double x : samples) {
    if (x < -m) {
      ++lo;
    } else if (x > m) {
      ++hi;
    } else {
      mid.push_back(x);
    }
  }
  const double n = static_cast<double>(samples.size());
  f.atom_lo = lo / n;
  f.atom_hi = hi / n;
  auto cdf = [&](double x) { return law.continuous_cdf(x); };
  if (law.has_atoms()) {
    f.ks = mid.empty() ? 1.0 : ks_distance(std::move(mid), cdf);
  } else {
    f.ks = ks_distance(samples, cdf);
  }
  return f;
}

TailChainPaths simulate_for_scheme(const NormingScheme& s, const LimitLaw& law, int horizon,
                                   std::size_t n, const Exec& exec) {
  const UpdateFunctions u = update_functions(s);
  if (s.kind == SchemeKind::kNegativeHt || s.kind == SchemeKind::kAlternatingGaussian) {
    return simulate_negdep_tail_chain(u, law, law, horizon, n, exec);
  }
  if (u.scale_only()) return simulate_nonneg_tail_chain(u, law, horizon, n, exec);
  return simulate_tail_chain(u, law, horizon, n, exec);
}

ConvergenceTable convergence_table(const KernelSpec& k, const NormingScheme& s,
                                   const LimitLaw& law, int t, const std::vector<double>& v_grid,
                                   std::size_t n, const Exec& exec, double m) {
  if (v_grid.empty()) fail(ErrorCategory::kValidation, "convergence table: empty v grid");
  ConvergenceTable table;
  table.kernel = k.id;
  table.scheme = s.id;
  table.t = t;
  std::vector<double> ref;
  if (t >= 2) {
    const Exec re{derive_seed(exec.seed, kTagConvRef, 0), exec.workers};
    const TailChainPaths tc = simulate_for_scheme(s, law, t, n, re);
    ref.resize(n);
    for (std::size_t i = 0; i < n; ++i) ref[i] = tc.at(i, t);
  }
  for (std::size_t j = 0; j < v_grid.size(); ++j) {
    const Exec re{derive_seed(exec.seed, kTagConvRow, j), exec.workers};
    const std::vector<double> xs = normalized_samples(k, v_grid[j], s, t, n, re);
    LimitFit f = fit_limit_law(xs, law, m);
    if (t >= 2) f.ks = ks_two_sample(xs, ref);
    table.rows.push_back({v_grid[j], n, f.ks, f.atom_lo, f.atom_hi, exec.seed});
  }
  return table;
}

double sorted_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) fail(ErrorCategory::kDomain, "quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

QuantileEnvelope quantile_envelope(const std::vector<double>& values, std::size_t n,
                                   int horizon, const std::string& source) {
  if (n < 1 || horizon < 1 || values.size() != n * static_cast<std::size_t>(horizon)) {
    fail(ErrorCategory::kValidation, "quantile envelope: inconsistent path array");
  }
  QuantileEnvelope env;
  env.low_precision = n < 100;
  std::vector<double> col(n);
  for (int t = 1; t <= horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) col[i] = values[i * horizon + (t - 1)];
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(n);
    std::sort(col.begin(), col.end());
    env.rows.push_back({source, t, sorted_quantile(col, 0.025), mean, sorted_quantile(col, 0.975)});
  }
  return env;
}

std::vector<ChiRow> chi_estimate(const KernelSpec& k, const MarginalLaw& law, int t,
                                 const std::vector<double>& u_grid, std::size_t n,
                                 const Exec& exec) {
  if (t < 1) fail(ErrorCategory::kValidation, "chi: t must be >= 1");
  if (u_grid.empty()) fail(ErrorCategory::kValidation, "chi: empty u grid");
  if (law.kind() != k.margin.kind()) {
    fail(ErrorCategory::kValidation, "chi: law does not match the kernel scale");
  }
  std::vector<double> thr(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) {
    if (!(u_grid[j] > 0.0 && u_grid[j] < 1.0)) {
      fail(ErrorCategory::kValidation, "chi: u must lie in (0, 1)");
    }
    thr[j] = law.quantile(u_grid[j]);
  }
  const double lowest = *std::min_element(thr.begin(), thr.end());
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<std::size_t>> den(chunks, std::vector<std::size_t>(thr.size()));
  std::vector<std::vector<std::size_t>> num = den;
  for_each_chunk(n, exec.workers, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
    Rng rng = make_stream(exec.seed, kTagChi, chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const double x0 = law.sample(rng);
      if (!(x0 > lowest)) continue;
      double x = x0;
      for (int s = 0; s < t; ++s) x = kernel_sample(k, x, rng);
      for (std::size_t j = 0; j < thr.size(); ++j) {
        if (x0 > thr[j]) {
          ++den[chunk][j];
          if (x > thr[j]) ++num[chunk][j];
        }
      }
    }
  });
  std::vector<ChiRow> rows;
  for (std::size_t j = 0; j < thr.size(); ++j) {
    std::size_t d = 0, c = 0;
    for (std::size_t b = 0; b < chunks; ++b) {
      d += den[b][j];
      c += num[b][j];
    }
    ChiRow r;
    r.u = u_grid[j];
    r.n_exceed = d;
    r.estimate = d > 0 ? static_cast<double>(c) / static_cast<double>(d)
                       : std::numeric_limits<double>::quiet_NaN();
    r.flagged = d < 50;
    rows.push_back(r);
  }
  return rows;
}

double changepoint_law_check(const std::vector<int>& first_times, int horizon, double p) {
  if (first_times.empty()) fail(ErrorCategory::kDomain, "changepoint check: no paths");
  if (!(p > 0.0 && p <= 1.0)) fail(ErrorCategory::kValidation, "changepoint check: p in (0, 1]");
  std::vector<double> emp(horizon + 2, 0.0);  // bins 1..H, H+1 = none
  for (int t : first_times) {
    const int bin = (t >= 1 && t <= horizon) ? t : horizon + 1;
    emp[bin] += 1.0;
  }
  const double n = static_cast<double>(first_times.size());
  double tv = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    tv += std::fabs(emp[t] / n - std::pow(1.0 - p, t - 1) * p);
  }
  tv += std::fabs(emp[horizon + 1] / n - std::pow(1.0 - p, horizon));
  return 0.5 * tv;
}

}  // namespace xc
