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

#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/special.hpp"

namespace xc {

RootResult solve_root_bracketed(const RealFn& f, double lo, double hi,
                                const RootOptions& opt) {
  if (!(opt.xtol > 0.0)) fail(ErrorCategory::kDomain, "solve_root: tol must be > 0");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb)) {
    fail(ErrorCategory::kBracketing, "solve_root: f is NaN at a bracket end");
  }
  if ((fa > 0 && fb > 0) || (fa < 0 && fb < 0)) {
    fail(ErrorCategory::kBracketing,
         "solve_root: no sign change on [" + std::to_string(lo) + ", " +
             std::to_string(hi) + "]");
  }
  if (fa == 0.0) return {a, a, a, 0};
  if (fb == 0.0) return {b, b, b, 0};
  double c = a, fc = fa, d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 1; it <= opt.max_iter; ++it) {
    if ((fb > 0 && fc > 0) || (fb < 0 && fc < 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = std::max(0.5 * opt.xtol, 2.0 * eps * std::fabs(b));
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= opt.ftol) {
      return {b, std::min(b, c), std::max(b, c), it};
    }
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (std::isnan(fb)) fail(ErrorCategory::kBracketing, "solve_root: f returned NaN");
  }
  fail(ErrorCategory::kConvergence, "solve_root: iteration limit reached");
}

double solve_root(const RealFn& f, double lo, double hi, double tol) {
  RootOptions opt;
  opt.xtol = tol;
  return solve_root_bracketed(f, lo, hi, opt).x;
}

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const RealFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    rk += kWgk[j] * s;
    if (j % 2 == 1) rg += kWg[j / 2] * s;
  }
  return {a, b, rk * h, std::fabs((rk - rg) * h)};
}

// 8-point Gauss-Legendre.
constexpr double kGlx[4] = {0.1834346424956498, 0.5255324099163290,
                            0.7966664774136267, 0.9602898564975363};
constexpr double kGlw[4] = {0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

template <class F>
double gauss_legendre(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int j = 0; j < 4; ++j) s += kGlw[j] * (f(c - h * kGlx[j]) + f(c + h * kGlx[j]));
  return s * h;
}

}  // namespace

double quadrature(const RealFn& f, double lo, double hi, double tol,
                  int max_intervals) {
  if (!(tol > 0.0)) fail(ErrorCategory::kDomain, "quadrature: tol must be > 0");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    fail(ErrorCategory::kDomain, "quadrature: interval must be finite");
  }
  if (lo == hi) return 0.0;
  if (hi < lo) return -quadrature(f, hi, lo, tol, max_intervals);
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, lo, hi);
  double total = s0.value, err = s0.error;
  heap.push(s0);
  int count = 1;
  while (err > tol) {
    if (count >= max_intervals) {
      throw AccuracyError("quadrature: refinement limit reached", total, err);
    }
    Segment s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b)) {
      throw AccuracyError("quadrature: interval underflow", total, err);
    }
    Segment l = gk15(f, s.a, m), r = gk15(f, m, s.b);
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++count;
    if (!std::isfinite(total)) {
      fail(ErrorCategory::kAccuracy, "quadrature: non-finite integrand");
    }
  }
  // Re-sum to limit drift from the running updates.
  total = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    heap.pop();
  }
  return total;
}

// ---------------------------------------------------------------- F_V solve

namespace {

// -log P(W > w) from a table with an exponential tail of rate 1.
struct NlsEval {
  const GridFunction* g;
  double w_max;
  double nls_max;
  double operator()(double w) const {
    if (w <= 0.0) return 0.0;
    if (w >= w_max) return nls_max + (w - w_max);
    return (*g)(w);
  }
};

GridFunction build_nls(const std::vector<double>& w, const std::vector<double>& nls,
                       double phi) {
  GridFunction rough(w, nls, Interp::kMonotoneCubic);
  NlsEval ev{&rough, w.back(), nls.back()};
  std::vector<double> slopes(w.size());
  // d/dw (-log S) = f/S with f(w) = S(w) - S(w/phi).
  for (std::size_t i = 0; i < w.size(); ++i) {
    slopes[i] = -std::expm1(nls[i] - ev(w[i] / phi));
  }
  return GridFunction(w, nls, std::move(slopes));
}

struct CumulativeIntegrals {
  std::vector<double> cj;  // int_0^{w_i} F(x) e^{phi x} dx
  std::vector<double> ci;  // int_0^{w_i} S(x) e^{phi x} dx
};

}  // namespace

double FvSolution::sf_w(double w) const {
  NlsEval ev{&nls, w_max, nls.y().back()};
  return std::exp(-ev(w));
}

double FvSolution::cdf_w(double w) const {
  NlsEval ev{&nls, w_max, nls.y().back()};
  return -std::expm1(-ev(w));
}

double FvSolution::isf_w(double q) const {
  if (!(q > 0.0)) fail(ErrorCategory::kDomain, "F_V inverse: q must be > 0");
  if (q >= 1.0) return 0.0;
  const double t = -std::log(q);
  const double top = nls.y().back();
  if (t >= top) return w_max + (t - top);
  return nls.inverse(t);
}

double FvSolution::mean_v() const {
  NlsEval ev{&nls, w_max, nls.y().back()};
  const auto& w = nls.x();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    m += gauss_legendre([&](double x) { return std::exp(-ev(x)); }, w[i], w[i + 1]);
  }
  m += std::exp(-nls.y().back());
  return m + lower;
}

FvSolution solve_fv_fixed_point(double phi, std::size_t grid_size, double tol) {
  if (!(phi > 0.0 && phi < 1.0)) {
    fail(ErrorCategory::kValidation, "F_V solve: phi must lie in (0,1)");
  }
  if (grid_size < 16) fail(ErrorCategory::kValidation, "F_V solve: grid too small");
  if (!(tol > 0.0)) fail(ErrorCategory::kValidation, "F_V solve: tol must be > 0");

  // Chernoff bound P(W > w) <= e^{-s w} prod_k 1/(1 - s phi^k) sets w_max.
  const double target = -std::log(1e-11);
  double w_max = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 100; ++k) {
    const double s = 0.01 * k;
    double lm = 0.0;
    for (double pk = 1.0; pk > 1e-18; pk *= phi) lm -= std::log1p(-s * pk);
    w_max = std::min(w_max, (target + lm) / s);
  }
  const double w_body = std::min(
      w_max, 1.0 / (1.0 - phi) + 8.0 / std::sqrt(1.0 - phi * phi));
  std::vector<double> w;
  w.reserve(grid_size);
  if (w_body >= w_max) {
    for (std::size_t i = 0; i < grid_size; ++i) {
      w.push_back(w_max * static_cast<double>(i) / static_cast<double>(grid_size - 1));
    }
  } else {
    const std::size_t nb = grid_size * 3 / 4;
    const std::size_t nt = grid_size - nb;
    const double h = w_body / static_cast<double>(nb - 1);
    for (std::size_t i = 0; i < nb; ++i) w.push_back(h * static_cast<double>(i));
    const double l0 = std::log(h);
    const double l1 = std::log(w_max - w_body + h);
    for (std::size_t j = 1; j <= nt; ++j) {
      w.push_back(w_body - h + std::exp(l0 + (l1 - l0) * static_cast<double>(j) /
                                                 static_cast<double>(nt)));
    }
    w.back() = w_max;
  }
  const std::size_t n = w.size();

  std::vector<double> nls(w);  // start: W = E_0
  GridFunction g = build_nls(w, nls, phi);

  std::vector<double> f_new(n), s_new(n);
  CumulativeIntegrals cum;
  cum.cj.resize(n);
  cum.ci.resize(n);

  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int iter = 0; iter < 20000; ++iter) {
    NlsEval ev{&g, w_max, nls.back()};
    auto fx = [&](double x) { return -std::expm1(-ev(x)) * std::exp(phi * x); };
    auto sx = [&](double x) { return std::exp(phi * x - ev(x)); };
    cum.cj[0] = cum.ci[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      cum.cj[i + 1] = cum.cj[i] + gauss_legendre(fx, w[i], w[i + 1]);
      cum.ci[i + 1] = cum.ci[i] + gauss_legendre(sx, w[i], w[i + 1]);
    }
    const double s_max = std::exp(-nls.back());
    auto integral_s = [&](double z) {
      if (z >= w_max) {
        return cum.ci[n - 1] + s_max * std::exp(phi * w_max) *
                                   (-std::expm1(-(1.0 - phi) * (z - w_max))) /
                                   (1.0 - phi);
      }
      const std::size_t k = static_cast<std::size_t>(
          std::upper_bound(w.begin(), w.end(), z) - w.begin() - 1);
      return cum.ci[k] + gauss_legendre(sx, w[k], z);
    };
    auto integral_f = [&](double z) {
      const std::size_t k = static_cast<std::size_t>(
          std::upper_bound(w.begin(), w.end(), z) - w.begin() - 1);
      return cum.cj[k] + gauss_legendre(fx, w[k], z);
    };
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = w[i] / phi;
      double s = std::exp(-w[i]) * (1.0 + phi * integral_s(z));
      double f;
      if (s > 0.5 && z < w_max) {
        f = phi * std::exp(-w[i]) * integral_f(z);
        s = 1.0 - f;
      } else {
        f = 1.0 - s;
      }
      s_new[i] = s;
      f_new[i] = f;
      residual = std::max(residual, std::fabs(f + std::expm1(-nls[i])));
    }
    if (residual < tol) {
      FvSolution out;
      out.phi = phi;
      out.lower = -1.0 / (1.0 - phi);
      out.w_max = w_max;
      out.residual = residual;
      out.iterations = iter;
      std::vector<double> xv(n), fv(n), dv(n);
      for (std::size_t i = 0; i < n; ++i) {
        xv[i] = w[i] + out.lower;
        fv[i] = -std::expm1(-nls[i]);
        dv[i] = std::exp(-nls[i]) * g.slopes()[i];
      }
      out.cdf = GridFunction(std::move(xv), std::move(fv), std::move(dv));
      out.nls = std::move(g);
      return out;
    }
    if (residual < best) {
      best = residual;
      since_best = 0;
    } else if (++since_best > 500) {
      fail(ErrorCategory::kConvergence,
           "F_V solve: fixed-point iteration stalled at residual " +
               std::to_string(best));
    }
    // Damped update, in whichever of F or S is the small one.
    for (std::size_t i = 0; i < n; ++i) {
      const double f_old = -std::expm1(-nls[i]);
      const double s_old = std::exp(-nls[i]);
      const double f = 0.5 * (f_old + f_new[i]);
      const double s = 0.5 * (s_old + s_new[i]);
      nls[i] = f < 0.5 ? -std::log1p(-f) : -std::log(s);
    }
    for (std::size_t i = 1; i < n; ++i) nls[i] = std::max(nls[i], nls[i - 1]);
    g = build_nls(w, nls, phi);
  }
  fail(ErrorCategory::kConvergence, "F_V solve: iteration limit reached");
}

double fv_check_residual(const FvSolution& s, std::size_t points) {
  const double phi = s.phi;
  const double w_max = s.w_max;
  const double s_max = s.sf_w(w_max);
  double worst = 0.0;
  for (std::size_t j = 1; j <= points; ++j) {
    const double w = w_max * static_cast<double>(j) / static_cast<double>(points);
    const double z = w / phi;
    const double scale = std::max(1.0, std::exp(w));
    double f_t;
    const double zc = std::min(z, w_max);
    double is = quadrature([&](double x) { return s.sf_w(x) * std::exp(phi * x); },
                           0.0, zc, 1e-14 * scale, 200000);
    if (z > w_max) {
      is += s_max * std::exp(phi * w_max) *
            (-std::expm1(-(1.0 - phi) * (z - w_max))) / (1.0 - phi);
    }
    const double s_t = std::exp(-w) * (1.0 + phi * is);
    if (s_t > 0.5 && z < w_max) {
      const double jf = quadrature(
          [&](double x) { return s.cdf_w(x) * std::exp(phi * x); }, 0.0, z,
          1e-14 * scale, 200000);
      f_t = phi * std::exp(-w) * jf;
    } else {
      f_t = 1.0 - s_t;
    }
    worst = std::max(worst, std::fabs(f_t - s.cdf_w(w)));
  }
  return worst;
}

// ---------------------------------------------------------------- ARCH

double arch_tail_index(double theta1) {
  if (!(theta1 > 0.0 && theta1 <= 1.0)) {
    fail(ErrorCategory::kValidation, "arch_tail_index: theta1 must lie in (0,1]");
  }
  if (theta1 == 1.0) return 2.0;  // E[W^2] = 1
  const double l2t = std::log(2.0 * theta1);
  const double half_log_pi = 0.5 * std::log(kPi);
  auto g = [&](double u) { return u * l2t + lanczos_lgamma(u + 0.5) - half_log_pi; };
  // g(0) = 0 trivially and g < 0 just right of 0; bracket the other root.
  double lo = 0.5, hi = 2.0;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) fail(ErrorCategory::kConvergence, "arch_tail_index: no bracket");
  }
  RootOptions opt;
  opt.xtol = 1e-14 * hi;
  return 2.0 * solve_root_bracketed(g, lo, hi, opt).x;
}

MarginalLaw arch_stationary_fit(double theta0, double theta1, std::uint64_t seed,
                                std::size_t steps, std::size_t burn_in,
                                std::size_t grid_points) {
  if (!(theta0 > 0.0)) fail(ErrorCategory::kValidation, "arch fit: theta0 must be > 0");
  if (!(theta1 > 0.0 && theta1 <= 1.0)) {
    fail(ErrorCategory::kValidation, "arch fit: theta1 must lie in (0,1]");
  }
  if (grid_points < 16 || grid_points % 2 != 0) {
    fail(ErrorCategory::kValidation, "arch fit: grid_points must be even and >= 16");
  }
  if (steps < 10 * grid_points) fail(ErrorCategory::kValidation, "arch fit: too few steps");
  Rng rng = make_stream(seed, 0xa7c4, 0);
  double y = 0.0;
  for (std::size_t i = 0; i < burn_in; ++i) {
    y = std::sqrt(theta0 + theta1 * y * y) * std_normal(rng);
  }
  std::vector<double> a(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    y = std::sqrt(theta0 + theta1 * y * y) * std_normal(rng);
    if (!std::isfinite(y)) fail(ErrorCategory::kInternal, "arch fit: non-finite state");
    a[i] = std::fabs(y);
  }
  std::sort(a.begin(), a.end());
  // Symmetrized empirical CDF: F(x) = 1/2 + P(|Y| <= x)/2 for x >= 0.
  const double p_lo = 0.001, p_hi = 0.999;
  std::vector<double> xs(grid_points), ps(grid_points);
  const std::size_t half = grid_points / 2;
  const double ns = static_cast<double>(steps);
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t j = half + i;
    const double p = p_lo + (p_hi - p_lo) * static_cast<double>(j) /
                                static_cast<double>(grid_points - 1);
    const double r = 2.0 * p - 1.0;
    std::size_t idx = static_cast<std::size_t>(std::ceil(r * ns));
    idx = idx == 0 ? 0 : std::min(idx - 1, steps - 1);
    xs[j] = a[idx];
    ps[j] = p;
    xs[grid_points - 1 - j] = -a[idx];
    ps[grid_points - 1 - j] = 1.0 - p;
  }
  for (std::size_t i = 0; i + 1 < grid_points; ++i) {
    if (!(xs[i + 1] > xs[i])) {
      fail(ErrorCategory::kInternal, "arch fit: empirical grid not strictly increasing");
    }
  }
  return MarginalLaw::arch_stationary(
      theta0, theta1, GridFunction(std::move(xs), std::move(ps), Interp::kLinear));
}

}  // namespace xc
