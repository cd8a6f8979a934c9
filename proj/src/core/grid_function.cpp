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

#include "core/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace xc {

GridFunction::GridFunction(std::vector<double> x, std::vector<double> y,
                           Interp rule)
    : x_(std::move(x)), y_(std::move(y)), rule_(rule) {
  validate();
  if (rule_ == Interp::kLinear) return;
  // Fritsch-Butland slopes.
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    return;
  }
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) continue;
    m_[i] = 3.0 * (h[i - 1] + h[i]) /
            ((2.0 * h[i] + h[i - 1]) / d[i - 1] + (h[i] + 2.0 * h[i - 1]) / d[i]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::fabs(m) > 3.0 * std::fabs(d0)) return 3.0 * d0;
    return m;
  };
  m_[0] = end_slope(h[0], h[1], d[0], d[1]);
  m_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

GridFunction::GridFunction(std::vector<double> x, std::vector<double> y,
                           std::vector<double> slopes)
    : x_(std::move(x)),
      y_(std::move(y)),
      m_(std::move(slopes)),
      rule_(Interp::kMonotoneCubic) {
  validate();
  if (m_.size() != x_.size()) {
    fail(ErrorCategory::kValidation, "grid function: slope count mismatch");
  }
  limit_slopes();
}

void GridFunction::validate() const {
  if (x_.size() != y_.size() || x_.size() < 2) {
    fail(ErrorCategory::kValidation,
         "grid function: need at least two (x, y) pairs of equal length");
  }
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i + 1] > x_[i])) {
      fail(ErrorCategory::kValidation,
           "grid function: abscissae must be strictly increasing");
    }
  }
}

void GridFunction::limit_slopes() {
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    if (d == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    if (m_[i] * d < 0.0) m_[i] = 0.0;
    if (m_[i + 1] * d < 0.0) m_[i + 1] = 0.0;
    const double a = m_[i] / d;
    const double b = m_[i + 1] / d;
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m_[i] = tau * a * d;
      m_[i + 1] = tau * b * d;
    }
  }
}

std::size_t GridFunction::cell(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, x_.size() - 2);
}

double GridFunction::eval_cell(std::size_t i, double x) const {
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  if (rule_ == Interp::kLinear) return y_[i] + t * (y_[i + 1] - y_[i]);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double GridFunction::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  return eval_cell(cell(x), x);
}

double GridFunction::inverse(double value) const {
  if (value <= y_.front()) return x_.front();
  if (value >= y_.back()) return x_.back();
  auto it = std::upper_bound(y_.begin(), y_.end(), value);
  std::size_t i = static_cast<std::size_t>(it - y_.begin());
  i = std::min(i == 0 ? 0 : i - 1, y_.size() - 2);
  if (y_[i + 1] == y_[i]) return x_[i];
  if (rule_ == Interp::kLinear) {
    return x_[i] + (value - y_[i]) / (y_[i + 1] - y_[i]) * (x_[i + 1] - x_[i]);
  }
  double lo = x_[i], hi = x_[i + 1];
  for (int k = 0; k < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++k) {
    const double mid = 0.5 * (lo + hi);
    if (eval_cell(i, mid) < value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string GridFunction::to_csv() const {
  std::string out = "x,value\n";
  for (std::size_t i = 0; i < x_.size(); ++i) {
    out += format_double(x_[i]);
    out += ',';
    out += format_double(y_[i]);
    out += '\n';
  }
  return out;
}

GridFunction GridFunction::from_csv(const std::string& text, Interp rule) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> x, y;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("x,", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      fail(ErrorCategory::kValidation, "grid csv: malformed row '" + line + "'");
    }
    x.push_back(parse_double(line.substr(0, comma)));
    y.push_back(parse_double(line.substr(comma + 1)));
  }
  return GridFunction(std::move(x), std::move(y), rule);
}

void GridFunction::write_csv(const std::string& path) const {
  write_text_file(path, to_csv());
}

GridFunction GridFunction::read_csv(const std::string& path, Interp rule) {
  return from_csv(read_text_file(path), rule);
}

}  // namespace xc
