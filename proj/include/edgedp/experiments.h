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
// Desk-scale experiment sweeps. Every sweep is deterministic in its
// seed; per-trial seeds come from DeriveTrialSeed so the row order and
// the values never depend on scheduling.

#ifndef EDGEDP_EXPERIMENTS_H_
#define EDGEDP_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edgedp/capture_attack.h"
#include "edgedp/transit_od.h"

namespace edgedp {

// ---------------------------------------------------------------------
// Buffer-capture attack sweep.

struct SniffParams {
  CityGrid grid = CityGrid::Midtown();
  double intensity = 1000.0;
  Seconds duration = 3600;
  std::vector<Seconds> max_ec_sweep = {30, 60, 120, 180, 240, 300};
};

struct SniffRow {
  std::string profile;
  Seconds max_ec = 0;
  double capture_fraction = 0.0;
  std::int64_t intersections_visited = 0;
};

std::vector<SniffRow> SniffSweep(const SniffParams& params,
                                 std::uint64_t seed);
std::string FormatSniffCsv(const std::vector<SniffRow>& rows);

// ---------------------------------------------------------------------
// Continual-count accuracy over release windows.

enum class CountMechanism { kToeplitz, kBinaryTree };

struct CountConfig {
  std::string label;
  double epsilon = 0.0;
  double delta_s = 0.0;
};

struct CountAccuracyParams {
  std::vector<int> window_hours = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  int days = 30;
  double base_rate_per_hour = 72.0;
  CountMechanism mechanism = CountMechanism::kToeplitz;
  double dp_delta = 1e-5;
  std::vector<CountConfig> configs = {
      {"trusted_eps1", 1.0, 9.0},
      {"trusted_eps0.1", 0.1, 9.0},
      {"untrusted_eps1", 1.0, 100.0},
  };
};

struct CountAccuracyRow {
  int window_hours = 0;
  std::string config;
  double rmsre = 0.0;
};

std::vector<CountAccuracyRow> CountAccuracySweep(
    const CountAccuracyParams& params, std::uint64_t seed,
    std::int64_t trials);
std::string FormatCountAccuracyCsv(const std::vector<CountAccuracyRow>& rows);

// ---------------------------------------------------------------------
// Subway OD estimation under per-device weekly budgets.

struct SubwayOdParams {
  RiderPopulation population;
  std::int64_t weeks = 4;
  double laplace_b = 2.0;
  double eps_report = 0.5;
  // Infinity means no budget gating.
  std::vector<double> epsilons;

  static SubwayOdParams Defaults();
};

struct SubwayOdRow {
  double epsilon = 0.0;
  BatchGranularity batch = BatchGranularity::kWeek;
  double rmsre = 0.0;
};

std::vector<SubwayOdRow> SubwayOdSweep(const SubwayOdParams& params,
                                       std::uint64_t seed,
                                       std::int64_t trials);
std::string FormatSubwayOdCsv(const std::vector<SubwayOdRow>& rows);

// ---------------------------------------------------------------------
// Exit-observation sensitivity of the OD pipeline.

struct SelfIdParams {
  RiderPopulation population;
  std::int64_t weeks = 4;
  double laplace_b = 2.0;
  double transfer_rate = 0.466;
  std::int64_t transfer_active_bins = 30;
  std::int64_t transfer_zero_bins = 100;
  std::vector<double> a_grid = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0};
  std::vector<double> p_grid = {0.0, 0.5, 1.0};

  static SelfIdParams Defaults();
};

std::vector<SelfIdPoint> SelfIdUtilitySweep(const SelfIdParams& params,
                                            std::uint64_t seed);
std::string FormatSelfIdCsv(const std::vector<SelfIdPoint>& points);

// ---------------------------------------------------------------------
// Randomized rotation property runs.

struct RotationPropsRow {
  std::int64_t run = 0;
  std::int64_t min_ec = 0;
  std::int64_t max_ec = 0;
  std::int64_t steps = 0;
  std::int64_t min_window = 0;
  std::int64_t max_window = 0;
  int max_live = 0;
  std::int64_t violations = 0;
};

std::vector<RotationPropsRow> RotationPropsSweep(std::uint64_t seed,
                                                 std::int64_t runs,
                                                 std::int64_t steps);
std::string FormatRotationPropsCsv(const std::vector<RotationPropsRow>& rows);

// ---------------------------------------------------------------------
// Dispatch used by the command-line harness.

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  // Zero picks the experiment's default trial count.
  std::int64_t trials = 0;
  std::map<std::string, std::string> overrides;
};

// Runs one experiment and returns its CSV. Unknown experiments, unknown
// override keys, and malformed values all throw std::invalid_argument.
std::string RunExperimentCsv(const ExperimentConfig& config);

// Flat key=value text; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> ParseKeyValueFile(const std::string& text);

}  // namespace edgedp

#endif  // EDGEDP_EXPERIMENTS_H_
