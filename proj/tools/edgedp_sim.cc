// Copyright 2026 The EdgeDP Authors
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
//
// Experiment harness. Writes one CSV per invocation; identical flags
// (seed included) produce byte-identical output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgedp/ephemeral_runtime.h"
#include "edgedp/experiments.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

int Run(int argc, char** argv) {
  CLI::App app{
      "edgedp_sim: seeded experiment sweeps over the privacy runtime"};

  edgedp::ExperimentConfig config;
  std::string out_path;
  std::string config_path;
  std::vector<std::string> set_args;
  bool trace_rotations = false;

  app.add_option("--experiment", config.experiment,
                 "one of: sniff, count-accuracy, subway-od, selfid-utility, "
                 "rotation-props")
      ->required();
  app.add_option("--seed", config.seed, "master seed (default 1)");
  app.add_option("--trials", config.trials,
                 "Monte Carlo trials (0 = experiment default)");
  app.add_option("--out", out_path, "output CSV path (default: stdout)");
  app.add_option("--config", config_path,
                 "key=value parameter file, overridden by --set");
  app.add_option("--set", set_args, "parameter override, key=value");
  app.add_flag("--trace-rotations", trace_rotations,
               "print a short rotation event trace to stderr first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config file " << config_path << "\n";
      return kExitIoError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      config.overrides = edgedp::ParseKeyValueFile(text.str());
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << config_path << ": " << e.what() << "\n";
      return kExitConfigError;
    }
  }
  for (const std::string& arg : set_args) {
    const std::size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got " << arg << "\n";
      return kExitConfigError;
    }
    config.overrides[arg.substr(0, eq)] = arg.substr(eq + 1);
  }

  if (trace_rotations) {
    edgedp::ContainerConfig demo{2, 10, edgedp::ContainerRole::kApplication};
    edgedp::ContainerSlot slot(demo, edgedp::RotationLimits{}, "demo");
    for (int frame = 0; frame < 24; ++frame) slot.AdvanceFrame();
    std::cerr << edgedp::FormatRotationTraceCsv(slot.event_log());
  }

  std::string csv;
  try {
    csv = edgedp::RunExperimentCsv(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  if (out_path.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return kExitIoError;
  }
  out << csv;
  out.close();
  if (!out) {
    std::cerr << "error: failed writing " << out_path << "\n";
    return kExitIoError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return Run(argc, argv); }
