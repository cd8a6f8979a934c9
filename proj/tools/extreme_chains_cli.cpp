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

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "extreme_chains/extreme_chains.h"

namespace {

int report(xc_status st) {
  if (st != XC_OK) std::fprintf(stderr, "error: %s\n", xc_last_error());
  return xc_status_exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and diagnostics for extremal Markov chains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(xc_version()));

  std::string config;
  std::string out_dir;
  unsigned workers = 0;

  CLI::App* run = app.add_subcommand("run", "Run an experiment config and write its artifacts");
  run->add_option("--config", config, "JSON experiment config")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--workers", workers, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  CLI::App* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", config, "JSON experiment config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*run) return report(xc_run_experiment(config.c_str(), out_dir.c_str(), workers));
  if (*validate) {
    const xc_status st = xc_validate_config(config.c_str());
    if (st == XC_OK) std::printf("ok\n");
    return report(st);
  }
  return 2;
}
