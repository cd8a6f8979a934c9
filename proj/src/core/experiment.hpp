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

#ifndef XC_CORE_EXPERIMENT_HPP
#define XC_CORE_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace xc {

inline constexpr const char* kVersion = "1.0.0";

struct ExperimentConfig {
  std::string kind;  // simulate, converge, figure1, hidden, negdep, chi
  std::uint64_t seed = 0;
  nlohmann::json raw;  // the full document, echoed into the manifest
};

// Validates ids, required fields and ranges that can be checked up front.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct OutputFile {
  std::string file;
  std::size_t rows = 0;
  std::vector<std::string> columns;
};

struct RunResult {
  std::vector<OutputFile> outputs;
  std::vector<std::string> warnings;
  nlohmann::json manifest;
};

// Writes the CSV artifacts and manifest.json into out_dir.
RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                         unsigned workers);

}  // namespace xc

#endif  // XC_CORE_EXPERIMENT_HPP
