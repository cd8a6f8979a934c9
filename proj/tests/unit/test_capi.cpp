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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "extreme_chains/extreme_chains.h"

namespace {

namespace fs = std::filesystem;

fs::path tmp_root() {
  const char* env = std::getenv("XC_TEST_TMP");
  fs::path p = env ? fs::path(env) : fs::temp_directory_path() / "xc_capi_tests";
  fs::create_directories(p);
  return p;
}

TEST(CApi, VersionAndStatus) {
  EXPECT_STREQ(xc_version(), "1.0.0");
  EXPECT_STREQ(xc_status_name(XC_ERR_VALIDATION), "validation");
  EXPECT_EQ(xc_status_exit_code(XC_OK), 0);
  EXPECT_EQ(xc_status_exit_code(XC_ERR_VALIDATION), 2);
  EXPECT_EQ(xc_status_exit_code(XC_ERR_IO), 4);
  EXPECT_EQ(xc_status_exit_code(XC_ERR_CONVERGENCE), 3);
}

TEST(CApi, Margins) {
  xc_margin* lap = nullptr;
  xc_margin* ex = nullptr;
  ASSERT_EQ(xc_margin_create("laplace", &lap), XC_OK);
  ASSERT_EQ(xc_margin_create("exponential", &ex), XC_OK);
  double v = 0.0;
  ASSERT_EQ(xc_margin_cdf(lap, 0.0, &v), XC_OK);
  EXPECT_EQ(v, 0.5);
  ASSERT_EQ(xc_margin_transform(lap, ex, 0.0, &v), XC_OK);
  EXPECT_NEAR(v, std::log(2.0), 1e-15);
  EXPECT_EQ(xc_margin_quantile(ex, 1.5, &v), XC_ERR_DOMAIN);
  EXPECT_NE(std::string(xc_last_error()).find("domain"), std::string::npos);
  EXPECT_EQ(xc_margin_create("weibull", &lap), XC_ERR_VALIDATION);
  xc_margin_destroy(lap);
  xc_margin_destroy(ex);
}

TEST(CApi, NullArguments) {
  double v;
  EXPECT_EQ(xc_margin_cdf(nullptr, 0.0, &v), XC_ERR_NULL_ARGUMENT);
  EXPECT_EQ(xc_kernel_create(nullptr, nullptr, 0, nullptr), XC_ERR_NULL_ARGUMENT);
  xc_margin_destroy(nullptr);
  xc_kernel_destroy(nullptr);
}

TEST(CApi, KernelLifecycle) {
  xc_kernel* k = nullptr;
  EXPECT_EQ(xc_kernel_create("gaussian_copula", R"({"rho": 0})", 1, &k), XC_ERR_VALIDATION);
  EXPECT_EQ(k, nullptr);
  EXPECT_EQ(xc_kernel_create("gaussian_copula", "{bad json", 1, &k), XC_ERR_VALIDATION);
  ASSERT_EQ(xc_kernel_create("gaussian_copula", R"({"rho": 0.8, "margins": "gaussian"})", 1, &k),
            XC_OK);
  double v = 0.0;
  ASSERT_EQ(xc_kernel_cdf(k, 2.0, 1.6, &v), XC_OK);
  EXPECT_NEAR(v, 0.5, 1e-14);
  double u = 0.0;
  ASSERT_EQ(xc_kernel_quantile(k, 2.0, 0.3, &v), XC_OK);
  ASSERT_EQ(xc_kernel_cdf(k, 2.0, v, &u), XC_OK);
  EXPECT_NEAR(u, 0.3, 1e-12);
  double a = 0, b = 0;
  ASSERT_EQ(xc_kernel_canonical_norming(k, &a, &b), XC_OK);
  EXPECT_EQ(a, 0.8);
  EXPECT_EQ(b, 0.0);
  std::vector<double> s1(5000), s2(5000);
  ASSERT_EQ(xc_kernel_sample(k, 3.0, 9, s1.size(), s1.data()), XC_OK);
  ASSERT_EQ(xc_kernel_sample(k, 3.0, 9, s2.size(), s2.data()), XC_OK);
  EXPECT_EQ(s1, s2);
  xc_kernel_destroy(k);
}

TEST(CApi, SchemeLimitAndTailChain) {
  xc_kernel* k = nullptr;
  ASSERT_EQ(xc_kernel_create("gaussian_copula", R"({"rho": 0.8})", 1, &k), XC_OK);
  xc_scheme* s = nullptr;
  xc_limit* l = nullptr;
  ASSERT_EQ(xc_scheme_default(k, &s), XC_OK);
  ASSERT_EQ(xc_limit_default(k, &l), XC_OK);
  double v = 0.0;
  ASSERT_EQ(xc_scheme_a(s, 1, 10.0, &v), XC_OK);
  EXPECT_DOUBLE_EQ(v, 6.4);
  ASSERT_EQ(xc_scheme_b(s, 1, 10.0, &v), XC_OK);
  EXPECT_DOUBLE_EQ(v, std::sqrt(10.0));
  double pa = 0, pb = 0;
  ASSERT_EQ(xc_scheme_psi(s, 2, 1.5, &pa, &pb), XC_OK);
  EXPECT_DOUBLE_EQ(pa, 0.64 * 1.5);
  EXPECT_DOUBLE_EQ(pb, 0.8);
  ASSERT_EQ(xc_limit_cdf(l, 0.0, &v), XC_OK);
  EXPECT_NEAR(v, 0.5, 1e-15);
  double lo = 1, hi = 1;
  ASSERT_EQ(xc_limit_atoms(l, &lo, &hi), XC_OK);
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 0.0);
  std::vector<double> m1(3000 * 4), m2(3000 * 4);
  ASSERT_EQ(xc_tail_chain_simulate(s, l, 4, 3000, 5, 1, m1.data()), XC_OK);
  ASSERT_EQ(xc_tail_chain_simulate(s, l, 4, 3000, 5, 2, m2.data()), XC_OK);
  EXPECT_EQ(m1, m2);
  double ra = 1, rb = 1;
  xc_scheme* rw = nullptr;
  ASSERT_EQ(xc_scheme_create("ht_canonical", R"({"alpha": 1, "beta": 0})", &rw), XC_OK);
  ASSERT_EQ(xc_scheme_remainders(rw, 1, 20.0, 0.5, &ra, &rb), XC_OK);
  EXPECT_EQ(ra, 0.0);
  EXPECT_EQ(rb, 0.0);
  xc_scheme* hr = nullptr;
  ASSERT_EQ(xc_scheme_create("husler_reiss", R"({"gamma": 1})", &hr), XC_OK);
  ASSERT_EQ(xc_scheme_remainders_log(hr, 1, 20.0, 0.0, &ra, &rb), XC_OK);
  EXPECT_TRUE(std::isfinite(ra));
  xc_limit* atoms = nullptr;
  ASSERT_EQ(xc_limit_create("asymmetric_logistic_k1",
                            R"({"phi1": 0.5, "phi2": 0.5, "nu": 0.152})", &atoms),
            XC_OK);
  EXPECT_EQ(xc_tail_chain_simulate(s, atoms, 2, 10, 1, 1, m1.data()), XC_ERR_REGIME);
  EXPECT_EQ(xc_limit_create("exp_ar", nullptr, &l), XC_ERR_UNSUPPORTED);
  xc_limit_destroy(atoms);
  xc_scheme_destroy(hr);
  xc_scheme_destroy(rw);
  xc_limit_destroy(l);
  xc_scheme_destroy(s);
  xc_kernel_destroy(k);
}

TEST(CApi, RunExperiment) {
  const fs::path root = tmp_root();
  const fs::path cfg = root / "chi.json";
  std::ofstream(cfg) << R"({"kind": "chi", "seed": 11, "n": 20000,
    "kernel": {"id": "bev_logistic", "params": {"gamma": 0.5}}, "u_grid": [0.9, 0.99]})";
  const fs::path out = root / "chi_out";
  ASSERT_EQ(xc_validate_config(cfg.c_str()), XC_OK);
  ASSERT_EQ(xc_run_experiment(cfg.c_str(), out.c_str(), 0), XC_OK) << xc_last_error();
  EXPECT_TRUE(fs::exists(out / "chi.csv"));
  EXPECT_TRUE(fs::exists(out / "manifest.json"));

  const fs::path bad = root / "bad.json";
  std::ofstream(bad) << R"({"kind": "chi", "kernel": {"id": "bev_logistic"}, "u_grid": [0.9]})";
  EXPECT_EQ(xc_run_experiment(bad.c_str(), (root / "bad_out").c_str(), 1), XC_ERR_VALIDATION);
  EXPECT_FALSE(fs::exists(root / "bad_out"));
  EXPECT_EQ(xc_run_experiment((root / "missing.json").c_str(), out.c_str(), 1), XC_ERR_IO);
}

}  // namespace
