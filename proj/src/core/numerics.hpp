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

#ifndef XC_CORE_NUMERICS_HPP
#define XC_CORE_NUMERICS_HPP

#include <cstdint>
#include <functional>

#include "core/grid_function.hpp"
#include "core/margins.hpp"

namespace xc {

using RealFn = std::function<double(double)>;

struct RootOptions {
  double xtol = 1e-12;  // final bracket width
  double ftol = 0.0;    // also stop once |f(x)| <= ftol
  int max_iter = 300;
};

struct RootResult {
  double x;
  double lo;  // bracket containing the root
  double hi;
  int iterations;
};

// Brent: bisection with secant / inverse quadratic steps.
RootResult solve_root_bracketed(const RealFn& f, double lo, double hi,
                                const RootOptions& opt);
double solve_root(const RealFn& f, double lo, double hi, double tol);

// Adaptive Gauss-Kronrod (7, 15) on a finite interval; absolute tolerance.
double quadrature(const RealFn& f, double lo, double hi, double tol,
                  int max_intervals = 4000);

// Stationary law of V_t = phi V_{t-1} + E_t - 1, E_t ~ Exp(1), on its
// support [-1/(1-phi), inf). Internally the shifted variable W = V + 1/(1-phi)
// is tabulated through -log P(W > w).
struct FvSolution {
  double phi = 0.0;
  double lower = 0.0;   // -1/(1-phi)
  double w_max = 0.0;   // end of the table, in W units
  GridFunction cdf;     // F_V on [lower, lower + w_max]
  GridFunction nls;     // -log P(W > w) on [0, w_max]
  double residual = 0.0;
  int iterations = 0;

  double sf_w(double w) const;
  double cdf_w(double w) const;
  double isf_w(double q) const;
  double cdf_v(double y) const { return cdf_w(y - lower); }
  double mean_v() const;
};

FvSolution solve_fv_fixed_point(double phi, std::size_t grid_size = 2048,
                                double tol = 1e-10);

// Sup-norm residual of the fixed-point map at `points` equally spaced
// abscissae, recomputed with adaptive quadrature.
double fv_check_residual(const FvSolution& s, std::size_t points);

// kappa = 2u with (2 theta1)^u Gamma(u + 1/2) / sqrt(pi) = 1.
double arch_tail_index(double theta1);

MarginalLaw arch_stationary_fit(double theta0, double theta1,
                                std::uint64_t seed,
                                std::size_t steps = 10000000,
                                std::size_t burn_in = 10000,
                                std::size_t grid_points = 4096);

}  // namespace xc

#endif  // XC_CORE_NUMERICS_HPP
