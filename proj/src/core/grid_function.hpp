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

#ifndef XC_CORE_GRID_FUNCTION_HPP
#define XC_CORE_GRID_FUNCTION_HPP

#include <string>
#include <vector>

namespace xc {

enum class Interp { kMonotoneCubic, kLinear };

// Tabulated function on strictly increasing abscissae. Outside the grid the
// end values are returned.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::vector<double> x, std::vector<double> y, Interp rule);
  // Cubic Hermite with caller-supplied slopes, limited where needed so that
  // monotone data stay monotone.
  GridFunction(std::vector<double> x, std::vector<double> y,
               std::vector<double> slopes);

  double operator()(double x) const;
  // Inverse for nondecreasing data; value is clamped to the data range.
  double inverse(double value) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& slopes() const { return m_; }
  Interp rule() const { return rule_; }
  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }

  // "x,value" rows with a header line.
  std::string to_csv() const;
  static GridFunction from_csv(const std::string& text, Interp rule);
  void write_csv(const std::string& path) const;
  static GridFunction read_csv(const std::string& path, Interp rule);

 private:
  void validate() const;
  void limit_slopes();
  std::size_t cell(double x) const;
  double eval_cell(std::size_t i, double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
  Interp rule_ = Interp::kLinear;
};

}  // namespace xc

#endif  // XC_CORE_GRID_FUNCTION_HPP
