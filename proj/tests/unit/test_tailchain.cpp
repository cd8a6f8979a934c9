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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/limit_law.hpp"
#include "core/norming.hpp"
#include "core/tailchain.hpp"

namespace xc {
namespace {

using nlohmann::json;

constexpr std::size_t kN = 100000;

std::vector<double> column(const TailChainPaths& p, int t) {
  std::vector<double> out(p.n);
  for (std::size_t i = 0; i < p.n; ++i) out[i] = p.at(i, t);
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

TEST(TailChain, RandomWalkVariance) {
  const LimitLaw k = make_limit_law("gaussian_copula_gaussian", {{"rho", 0.5}});
  const TailChainPaths p =
      simulate_tail_chain(update_functions(make_ht_canonical(1.0, 0.0)), k, 5, kN, {1, 1});
  for (int t = 1; t <= 5; ++t) {
    EXPECT_NEAR(variance(column(p, t)) / (t * 0.75), 1.0, 0.05) << t;
  }
}

TEST(TailChain, HtMeanRecursion) {
  const double alpha = 0.64, beta = 0.5;
  const LimitLaw k = make_limit_law("exponential", json::object());
  const TailChainPaths p =
      simulate_tail_chain(update_functions(make_ht_canonical(alpha, beta)), k, 6, kN, {2, 1});
  double expected = 1.0;  // E[M_1] = E[eps]
  for (int t = 1; t <= 6; ++t) {
    if (t > 1) expected = alpha * expected + std::pow(alpha, (t - 1) * beta);
    const auto c = column(p, t);
    EXPECT_LT(std::abs(mean(c) - expected), 3.0 * std::sqrt(variance(c) / kN)) << t;
  }
}

TEST(TailChain, FirstStateHasLawK) {
  const LimitLaw k = make_limit_law("bev_logistic", {{"gamma", 0.3}});
  const TailChainPaths p =
      simulate_tail_chain(update_functions(make_ht_canonical(1.0, 0.0)), k, 1, kN, {3, 1});
  EXPECT_LT(ks_distance(column(p, 1), [&](double x) { return k.cdf(x); }), 0.006);
}

TEST(TailChain, InitialExceedanceIndependent) {
  const LimitLaw k = make_limit_law("gaussian_copula_exponential", {{"rho", 0.8}});
  const TailChainPaths p =
      simulate_tail_chain(update_functions(make_ht_canonical(0.64, 0.5)), k, 2, kN, {4, 1});
  const auto m1 = column(p, 1);
  const double me = mean(p.e0), mm = mean(m1);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < kN; ++i) {
    sxy += (p.e0[i] - me) * (m1[i] - mm);
    sxx += (p.e0[i] - me) * (p.e0[i] - me);
    syy += (m1[i] - mm) * (m1[i] - mm);
  }
  EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.02);
  EXPECT_NEAR(mean(p.e0), 1.0, 0.015);
}

TEST(TailChain, AtomsAreRejected) {
  const LimitLaw k1 = make_limit_law("asymmetric_logistic_k1",
                                     {{"phi1", 0.5}, {"phi2", 0.5}, {"nu", 0.152}});
  try {
    simulate_tail_chain(update_functions(make_ht_canonical(1.0, 0.0)), k1, 3, 10, {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kRegime);
  }
}

TEST(NonnegTailChain, LogAutoregression) {
  const double beta = 1.0 - 0.152;
  const LimitLaw k = make_limit_law("inverted_bev_logistic", {{"gamma", 0.152}});
  const int horizon = 6;
  const TailChainPaths p = simulate_nonneg_tail_chain(
      update_functions(make_ht_canonical(0.0, beta)), k, horizon, kN, {5, 1});
  for (double m : p.m) ASSERT_GT(m, 0.0);
  // Pooled lag-1 regression slope of log M_{t+1} on log M_t.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < kN; ++i) {
    for (int t = 1; t < horizon; ++t) {
      const double x = std::log(p.at(i, t)), y = std::log(p.at(i, t + 1));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  EXPECT_NEAR(slope, beta, 0.05);

  // E[log M_t] = E[log eps] (1 + beta + ... + beta^{t-1}).
  std::vector<double> le(kN);
  for (std::size_t i = 0; i < kN; ++i) le[i] = std::log(p.at(i, 1));
  const double elog = mean(le);
  for (int t = 2; t <= horizon; ++t) {
    std::vector<double> lt(kN);
    for (std::size_t i = 0; i < kN; ++i) lt[i] = std::log(p.at(i, t));
    const double expected = elog * (1.0 - std::pow(beta, t)) / (1.0 - beta);
    EXPECT_LT(std::abs(mean(lt) - expected), 3.0 * std::sqrt(variance(lt) / kN) + 0.01) << t;
  }
}

TEST(NonnegTailChain, RegimeErrors) {
  const UpdateFunctions u = update_functions(make_ht_canonical(0.0, 0.5));
  EXPECT_THROW(simulate_nonneg_tail_chain(
                   u, make_limit_law("gaussian_copula_gaussian", {{"rho", 0.5}}), 2, 10, {1, 1}),
               Error);
}

TEST(NegdepTailChain, AlternatingRecursion) {
  const double rho = -0.8;
  const NormingScheme s = make_alternating_gaussian(rho);
  const LimitLaw k = make_limit_law("gaussian_copula_gaussian", {{"rho", rho}});
  const TailChainPaths p = simulate_negdep_tail_chain(update_functions(s), k, k, 4, kN, {6, 1});
  for (int t = 1; t < 4; ++t) {
    std::vector<double> eps(kN);
    for (std::size_t i = 0; i < kN; ++i) {
      eps[i] = (p.at(i, t + 1) + rho * rho * p.at(i, t)) / std::pow(std::abs(rho), t);
    }
    EXPECT_LT(ks_distance(eps, [&](double x) { return k.cdf(x); }), 0.006) << t;
  }
}

TEST(NegdepTailChain, InnovationParity) {
  const NormingScheme s = make_alternating_gaussian(-0.5);
  const LimitLaw km = make_limit_law("laplace", json::object());
  const LimitLaw kp = make_limit_law("gaussian_copula_gaussian", {{"rho", 0.3}});
  const TailChainPaths p = simulate_negdep_tail_chain(update_functions(s), km, kp, 3, kN, {7, 1});
  std::vector<double> m1(kN), e2(kN), e3(kN);
  for (std::size_t i = 0; i < kN; ++i) {
    m1[i] = p.at(i, 1);
    e2[i] = (p.at(i, 2) + 0.25 * p.at(i, 1)) / 0.5;
    e3[i] = (p.at(i, 3) + 0.25 * p.at(i, 2)) / 0.25;
  }
  EXPECT_LT(ks_distance(m1, [&](double x) { return km.cdf(x); }), 0.006);
  EXPECT_LT(ks_distance(e2, [&](double x) { return kp.cdf(x); }), 0.006);
  EXPECT_LT(ks_distance(e3, [&](double x) { return km.cdf(x); }), 0.006);
}

TEST(NegdepTailChain, ReducesToStandardRecursion) {
  const NormingScheme s = make_negative_ht(-0.6, -0.6, 0.3);
  const UpdateFunctions u = update_functions(s);
  const LimitLaw k = make_limit_law("laplace", json::object());
  const TailChainPaths a = simulate_negdep_tail_chain(u, k, k, 3, kN, {8, 1});
  const TailChainPaths b = simulate_tail_chain(u, k, 3, kN, {9, 1});
  EXPECT_LT(ks_two_sample(column(a, 3), column(b, 3)), 0.01);
}

TEST(Reconstruct, AffineMap) {
  TailChainPaths p;
  p.n = 2;
  p.horizon = 3;
  p.e0 = {1.0, 1.0};
  p.m = {0.5, -1.0, 2.0, 0.0, 0.0, 0.0};
  const auto rw = reconstruct_paths(10.0, make_ht_canonical(1.0, 0.0), p);
  EXPECT_EQ(rw[0], 10.5);
  EXPECT_EQ(rw[1], 9.0);
  EXPECT_EQ(rw[2], 12.0);
  const NormingScheme ht = make_ht_canonical(0.64, 0.5);
  const auto r = reconstruct_paths(10.0, ht, p);
  EXPECT_NEAR(r[0], 6.4 + std::sqrt(10.0) * 0.5, 1e-12);
  for (int t = 1; t <= 3; ++t) EXPECT_DOUBLE_EQ(r[3 + t - 1], ht.a(t, 10.0));
}

TEST(ChangePoints, RatioThreshold) {
  const ChangePointRule rule{ChangePointRule::Kind::kRatioThreshold, 0.5};
  EXPECT_EQ(detect_changepoints({10, 9, 4, 5}, rule), std::vector<int>({2}));
  EXPECT_TRUE(detect_changepoints({10, 9, 8, 7.5}, rule).empty());
  EXPECT_TRUE(detect_changepoints({10}, rule).empty());
}

TEST(ChangePoints, AlternatingRatio) {
  const ChangePointRule rule{ChangePointRule::Kind::kAlternatingRatio, 0.5};
  // Hit "<=" at t = 2; next needs ">" (t = 3 stays low, t = 4 recovers); then "<=" again.
  EXPECT_EQ(detect_changepoints({10, 9, 4, 1.5, 3, 2.9, 1.0}, rule), std::vector<int>({2, 4, 6}));
}

TEST(ChangePoints, SignAndValue) {
  const ChangePointRule sign{ChangePointRule::Kind::kSignChange, 0.5};
  EXPECT_EQ(detect_changepoints({2, 3, -1, -4, 5}, sign), std::vector<int>({2, 4}));
  const ChangePointRule value{ChangePointRule::Kind::kValueChange, 0.5};
  EXPECT_EQ(detect_changepoints({5, -5, 5, 1.2, -1.2}, value), std::vector<int>({3}));
}

}  // namespace
}  // namespace xc
