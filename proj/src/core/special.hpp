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

#ifndef XC_CORE_SPECIAL_HPP
#define XC_CORE_SPECIAL_HPP

namespace xc {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

double norm_pdf(double x);
double norm_cdf(double x);
double norm_sf(double x);
// Inverse of norm_cdf; p in (0, 1).
double norm_quantile(double p);
// Inverse of norm_sf; q in (0, 1).
double norm_isf(double q);

// log(1 + exp(z)) without overflow.
double log1p_exp(double z);

// Lanczos (g = 7, n = 9).
double lanczos_gamma(double x);
double lanczos_lgamma(double x);

}  // namespace xc

#endif  // XC_CORE_SPECIAL_HPP
