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

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/exponent_measure.hpp"
#include "core/kernels.hpp"
#include "core/rng.hpp"
#include "core/special.hpp"

namespace xc {
namespace {

using nlohmann::json;

struct Named {
  const char* name;
  KernelPtr k;
};

// Every continuous kernel of the catalogue, on its declared margin.
const std::vector<Named>& catalogue() {
  static const std::vector<Named> all = [] {
    std::vector<Named> v;
    v.push_back({"gc_exp", make_gaussian_copula(0.8, MarginalLaw::exponential())});
    v.push_back({"gc_laplace_neg", make_gaussian_copula(-0.6, MarginalLaw::laplace())});
    v.push_back({"gc_gauss", make_gaussian_copula(0.5, MarginalLaw::gaussian())});
    v.push_back({"bev", make_bev_logistic(0.5)});
    v.push_back({"ibev", make_inverted_bev_logistic(0.152)});
    v.push_back({"asym", make_asymmetric_logistic(0.5, 0.5, 0.152)});
    v.push_back({"asym_uneq", make_asymmetric_logistic(0.3, 0.7, 0.4)});
    v.push_back({"ims_hr", make_inverted_max_stable(husler_reiss(1.0))});
    v.push_back({"ims_unif", make_inverted_max_stable(uniform_density())});
    v.push_back({"ims_beta", make_inverted_max_stable(symmetric_beta_density(1.5))});
    v.push_back({"ims_dd", make_inverted_max_stable(density_decay_density(1.0, 0.5, 1.0))});
    v.push_back({"exp_ar", make_exp_ar(0.8)});
    v.push_back({"mixture", make_ht_mixture(0.4, make_gaussian_copula(0.95, MarginalLaw::exponential()),
                                            make_gaussian_copula(0.3, MarginalLaw::exponential()))});
    v.push_back({"arch", make_kernel("arch_laplace",
                                     {{"theta0", 1.0}, {"theta1", 0.5}, {"fit_steps", 1000000}}, 5)});
    return v;
  }();
  return all;
}

std::vector<double> conditioning_points(const KernelSpec& k) {
  if (k.margin.kind() == MarginKind::kExponential) return {0.05, 0.7, 3.0, 9.0, 25.0};
  return {-9.0, -1.0, 0.0, 0.6, 4.0, 15.0};
}

TEST(ExponentMeasure, HuslerReiss) {
  for (double g : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(exponent_V(husler_reiss(g), 1.0, 1.0), 2.0 * norm_cdf(g / 2.0), 1e-15);
  }
  EXPECT_NEAR(exponent_V(husler_reiss(1.0), 1.0, 1.0), 1.3829249225480262073, 1e-14);
}

TEST(ExponentMeasure, MarginConstraintAndHomogeneity) {
  const std::vector<ExponentMeasure> all = {husler_reiss(0.7), uniform_density(),
                                            symmetric_beta_density(0.5),
                                            density_decay_density(1.0, 0.5, 1.0)};
  for (const auto& e : all) {
    for (double x : {0.3, 1.0, 4.0}) {
      EXPECT_NEAR(exponent_V(e, x, INFINITY), 1.0 / x, 1e-12) << e.name();
      for (double y : {0.2, 1.0, 7.0}) {
        for (double s : {0.5, 3.0}) {
          EXPECT_NEAR(exponent_V(e, s * x, s * y), exponent_V(e, x, y) / s,
                      1e-9 * exponent_V(e, x, y))
              << e.name();
        }
        const double h = 1e-5 * x;
        const double fd = (exponent_V(e, x + h, y) - exponent_V(e, x - h, y)) / (2.0 * h);
        EXPECT_NEAR(exponent_V1(e, x, y), fd, 1e-6 * std::max(1.0, std::abs(fd))) << e.name();
      }
    }
  }
}

TEST(ExponentMeasure, DensityConstraints) {
  EXPECT_NEAR(exponent_V(uniform_density(), 1.0, 1.0), 1.5, 1e-10);
  for (const auto& e : {uniform_density(), symmetric_beta_density(0.5),
                        symmetric_beta_density(3.0), density_decay_density(1.0, 0.5, 1.0),
                        density_decay_density(0.5, 1.0, 0.0)}) {
    EXPECT_NEAR(density_mass(e, 0.0, 1.0), 2.0, 1e-8) << e.name();
    EXPECT_NEAR(density_moment(e, 0.0, 1.0), 1.0, 1e-8) << e.name();
  }
}

TEST(ExponentMeasure, NonPositiveArguments) {
  EXPECT_THROW(exponent_V(husler_reiss(1.0), 0.0, 1.0), Error);
  EXPECT_THROW(exponent_V(uniform_density(), 1.0, -2.0), Error);
}

TEST(Kernels, GaussianCopulaCentred) {
  const auto k = make_gaussian_copula(0.7, MarginalLaw::gaussian());
  for (double x : {-2.0, 0.0, 1.3, 4.0}) EXPECT_NEAR(kernel_cdf(*k, x, 0.7 * x), 0.5, 1e-14);
}

TEST(Kernels, InvertedBevTotalMass) {
  const auto k = make_inverted_bev_logistic(0.3);
  for (double x : {0.1, 2.0, 30.0}) EXPECT_EQ(kernel_cdf(*k, x, INFINITY), 1.0);
}

TEST(Kernels, BevDiagonalLimit) {
  const auto k = make_bev_logistic(0.5);
  EXPECT_NEAR(kernel_cdf(*k, 40.0, 40.0), std::pow(2.0, -0.5), 1e-8);
  // Frechet-scale value at z: 2^{g-1} exp((1 - 2^g)/z).
  const double x = 3.0, z = exp_to_frechet(x);
  EXPECT_NEAR(kernel_cdf(*k, x, x), std::pow(2.0, -0.5) * std::exp((1.0 - std::sqrt(2.0)) / z),
              1e-12);
}

TEST(Kernels, ExpArTruncation) {
  const auto k = make_exp_ar(0.8);
  const double x = 6.0;
  // U(y) <= phi U(x) for y well below the conditioning level.
  for (double y : {1e-6, 0.01}) EXPECT_EQ(kernel_cdf(*k, x, y), 0.0);
  EXPECT_GT(kernel_cdf(*k, x, x), 0.0);
}

TEST(Kernels, DomainErrors) {
  const auto k = make_bev_logistic(0.5);
  try {
    kernel_cdf(*k, -1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kDomain);
  }
  EXPECT_THROW(kernel_cdf(*make_gaussian_copula(0.5, MarginalLaw::laplace()), NAN, 0.0), Error);
}

TEST(Kernels, Validation) {
  auto category = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.category();
    }
    return ErrorCategory::kInternal;
  };
  EXPECT_EQ(category([] { make_kernel("gaussian_copula", {{"rho", 0.0}}, 1); }),
            ErrorCategory::kValidation);
  EXPECT_EQ(category([] {
              make_ht_mixture(0.5, make_gaussian_copula(0.3, MarginalLaw::exponential()),
                              make_gaussian_copula(0.9, MarginalLaw::exponential()));
            }),
            ErrorCategory::kValidation);
  EXPECT_EQ(category([] { make_bev_logistic(1.0); }), ErrorCategory::kValidation);
  EXPECT_EQ(category([] { make_kernel("no_such_kernel", json::object(), 1); }),
            ErrorCategory::kUnsupported);
  EXPECT_NO_THROW(make_kernel("asymmetric_logistic", {{"phi1", 0.5}, {"phi2", 0.5}, {"nu", 0.152}}, 1));
}

TEST(Kernels, CanonicalNormings) {
  auto pair = [](const KernelPtr& k) {
    const auto p = k->canonical_norming();
    return p ? std::make_pair(p->alpha, p->beta) : std::make_pair(double(NAN), double(NAN));
  };
  EXPECT_EQ(pair(make_gaussian_copula(0.8, MarginalLaw::exponential())),
            std::make_pair(0.8 * 0.8, 0.5));
  EXPECT_EQ(pair(make_bev_logistic(0.3)), std::make_pair(1.0, 0.0));
  EXPECT_EQ(pair(make_inverted_bev_logistic(0.152)), std::make_pair(0.0, 1.0 - 0.152));
  EXPECT_EQ(pair(make_inverted_max_stable(uniform_density())), std::make_pair(0.0, 0.5));
}

TEST(Kernels, CdfMonotoneInY) {
  Rng rng = make_stream(4, 4, 0);
  for (const auto& [name, k] : catalogue()) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto xs = conditioning_points(*k);
      const double x = xs[static_cast<std::size_t>(uniform01(rng) * xs.size())];
      const double lo = k->margin.kind() == MarginKind::kExponential ? 0.0 : -30.0;
      const double hi = std::max(x, 0.0) + 30.0;
      double prev = 0.0;
      for (int i = 0; i < 100; ++i) {
        const double y = lo + (i + 0.5) * (hi - lo) / 100.0;
        const double f = kernel_cdf(*k, x, y);
        EXPECT_GE(f, prev - 1e-14) << name << " x=" << x << " y=" << y;
        EXPECT_LE(f, 1.0) << name;
        prev = f;
      }
    }
  }
}

TEST(Kernels, QuantileInvertsCdf) {
  for (const auto& [name, k] : catalogue()) {
    for (double x : conditioning_points(*k)) {
      for (double u : {0.001, 0.1, 0.5, 0.77, 0.999}) {
        const double y = kernel_quantile(*k, x, u);
        const double f = kernel_cdf(*k, x, y);
        // An ExpAR draw can sit on the truncation atom at the lower end.
        if (k->kind == KernelKind::kExpAR && f > u) continue;
        EXPECT_NEAR(f, u, 1e-10) << name << " x=" << x << " u=" << u;
      }
    }
  }
}

TEST(Kernels, SamplesMatchCdf) {
  for (const auto& [name, k] : catalogue()) {
    const double x = conditioning_points(*k)[2];
    Rng rng = make_stream(17, 0, 0);
    std::vector<double> draws(100000);
    for (auto& d : draws) d = kernel_sample(*k, x, rng);
    const double ks = ks_distance(draws, [&](double y) { return kernel_cdf(*k, x, y); });
    EXPECT_LT(ks, 0.006) << name;
  }
}

TEST(Kernels, GaussianCopulaConditionalMean) {
  const auto k = make_gaussian_copula(0.8, MarginalLaw::gaussian());
  Rng rng = make_stream(5, 0, 0);
  const int n = 100000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = kernel_sample(*k, 3.0, rng);
    s += y;
    s2 += y * y;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_LT(std::abs(mean - 2.4), 3.0 * se);
}

TEST(Kernels, RootzenSmithAtom) {
  const auto k = make_rootzen_smith();
  Rng rng = make_stream(6, 0, 0);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += kernel_sample(*k, 5.0, rng) == -5.0;
  EXPECT_LT(std::abs(hits / double(n) - 0.5), 3.0 * std::sqrt(0.25 / n));
  EXPECT_NEAR(kernel_cdf(*k, 5.0, -5.0) - kernel_cdf(*k, 5.0, std::nextafter(-5.0, -10.0)), 0.5,
              1e-12);
}

TEST(Kernels, Stationarity) {
  std::vector<Named> all = catalogue();
  all.push_back({"rootzen", make_rootzen_smith()});
  for (const auto& [name, k] : all) {
    Rng rng = make_stream(23, 0, 0);
    std::vector<double> next(10000);
    for (auto& y : next) y = kernel_sample(*k, k->margin.sample(rng), rng);
    const double ks = ks_distance(next, [&](double y) { return k->margin.cdf(y); });
    EXPECT_LT(ks, 0.02) << name;
  }
}

}  // namespace
}  // namespace xc
