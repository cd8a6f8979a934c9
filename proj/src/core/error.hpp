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

#ifndef XC_CORE_ERROR_HPP
#define XC_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace xc {

enum class ErrorCategory {
  kDomain,
  kValidation,
  kBracketing,
  kAccuracy,
  kConvergence,
  kUnsupported,
  kRegime,
  kSampling,
  kIo,
  kInternal,
};

const char* category_name(ErrorCategory c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// Thrown by quadrature when refinement is exhausted.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best, double error_estimate)
      : Error(ErrorCategory::kAccuracy, what),
        best_(best),
        error_estimate_(error_estimate) {}
  double best_estimate() const { return best_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_;
  double error_estimate_;
};

[[noreturn]] inline void fail(ErrorCategory c, const std::string& msg) {
  throw Error(c, msg);
}

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kDomain: return "domain";
    case ErrorCategory::kValidation: return "validation";
    case ErrorCategory::kBracketing: return "bracketing";
    case ErrorCategory::kAccuracy: return "accuracy";
    case ErrorCategory::kConvergence: return "convergence";
    case ErrorCategory::kUnsupported: return "unsupported";
    case ErrorCategory::kRegime: return "regime";
    case ErrorCategory::kSampling: return "sampling";
    case ErrorCategory::kIo: return "io";
    case ErrorCategory::kInternal: return "internal";
  }
  return "internal";
}

// Process exit status for a failed run: 2 configuration, 3 numeric, 4 I/O.
inline int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kValidation:
    case ErrorCategory::kUnsupported:
      return 2;
    case ErrorCategory::kIo:
      return 4;
    default:
      return 3;
  }
}

}  // namespace xc

#endif  // XC_CORE_ERROR_HPP
