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

#include "edgedp/experiments.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "edgedp/binary_tree.h"
#include "edgedp/ephemeral_runtime.h"
#include "edgedp/noise.h"
#include "edgedp/toeplitz.h"

namespace edgedp {

namespace {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) {
    parts.push_back(part);
  }
  return parts;
}

double ParseDoubleValue(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (value == "inf") return std::numeric_limits<double>::infinity();
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric value for " + key);
  }
}

std::int64_t ParseIntValue(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer value for " + key);
  }
}

// Splits overrides into population keys and the rest.
const std::set<std::string> kPopulationKeys = {
    "riders",   "stationCount", "activeDestinations", "lightShare",
    "lightMax", "heavyMax",     "propensitySeed"};

std::map<std::string, std::string> TakePopulationKeys(
    std::map<std::string, std::string>& overrides) {
  std::map<std::string, std::string> population;
  for (auto it = overrides.begin(); it != overrides.end();) {
    if (kPopulationKeys.count(it->first) > 0) {
      population.insert(*it);
      it = overrides.erase(it);
    } else {
      ++it;
    }
  }
  return population;
}

void RejectUnknownKeys(const std::map<std::string, std::string>& overrides,
                       const std::set<std::string>& known) {
  for (const auto& [key, value] : overrides) {
    if (known.count(key) == 0) {
      throw std::invalid_argument("unknown override: " + key);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------
// Buffer-capture attack sweep.

std::vector<SniffRow> SniffSweep(const SniffParams& params,
                                 std::uint64_t seed) {
  const TrafficModel traffic =
      GenerateTraffic(params.grid, params.intensity, seed, params.duration);
  std::vector<SniffRow> rows;
  for (AttackerKind kind :
       {AttackerKind::kPedestrian, AttackerKind::kCyclist, AttackerKind::kCar,
        AttackerKind::kStatic}) {
    const AttackerProfile profile =
        AttackerProfile::Default(kind, params.grid);
    const std::vector<Visit> route =
        GreedyRoute(params.grid, profile, params.duration);
    for (Seconds max_ec : params.max_ec_sweep) {
      const CaptureLog log =
          ReplayAttack(params.grid, traffic, profile, route, max_ec);
      SniffRow row;
      row.profile = AttackerName(kind);
      row.max_ec = max_ec;
      row.capture_fraction = log.Fraction();
      row.intersections_visited =
          static_cast<std::int64_t>(log.visited.size());
      rows.push_back(row);
    }
  }
  return rows;
}

std::string FormatSniffCsv(const std::vector<SniffRow>& rows) {
  std::string out = "profile,maxEC_seconds,captureFraction,intersectionsVisited\n";
  for (const SniffRow& row : rows) {
    out += row.profile + "," + std::to_string(row.max_ec) + "," +
           FormatDouble(row.capture_fraction) + "," +
           std::to_string(row.intersections_visited) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------
// Continual-count accuracy.

namespace {

constexpr std::int64_t kMinutesPerDay = 1440;

// Per-minute expected counts: a diurnal sinusoid, always positive, with
// mild seeded jitter so the stream is not perfectly smooth.
std::vector<double> SyntheticCountStream(int days, double base_rate_per_hour,
                                         std::uint64_t seed) {
  NoiseSampler sampler(seed);
  std::vector<double> counts(days * kMinutesPerDay);
  for (std::size_t m = 0; m < counts.size(); ++m) {
    const double minute_of_day = static_cast<double>(m % kMinutesPerDay);
    const double phase =
        2.0 * std::numbers::pi * (minute_of_day - 6.0 * 60.0) / kMinutesPerDay;
    const double rate =
        base_rate_per_hour / 60.0 * (1.0 + 0.6 * std::sin(phase));
    const double jitter = 1.0 + 0.15 * sampler.Gaussian(1.0);
    counts[m] = std::max(0.05 * base_rate_per_hour / 60.0, rate * jitter);
  }
  return counts;
}

std::vector<double> WindowTruths(const std::vector<double>& minutes,
                                 std::int64_t window_minutes) {
  std::vector<double> truths;
  const std::int64_t complete =
      static_cast<std::int64_t>(minutes.size()) / window_minutes;
  truths.reserve(complete);
  for (std::int64_t i = 0; i < complete; ++i) {
    double sum = 0.0;
    for (std::int64_t m = i * window_minutes; m < (i + 1) * window_minutes;
         ++m) {
      sum += minutes[m];
    }
    truths.push_back(sum);
  }
  return truths;
}

}  // namespace

std::vector<CountAccuracyRow> CountAccuracySweep(
    const CountAccuracyParams& params, std::uint64_t seed,
    std::int64_t trials) {
  if (trials < 1 || params.days < 1 || params.window_hours.empty() ||
      params.configs.empty() || !(params.base_rate_per_hour > 0.0)) {
    throw std::invalid_argument("invalid count accuracy parameters");
  }
  for (int w : params.window_hours) {
    if (w < 1 || w > 24) {
      throw std::invalid_argument("window must be between 1 and 24 hours");
    }
    if (params.mechanism == CountMechanism::kBinaryTree) {
      const std::int64_t per_day = 24 / w;
      if (per_day * w != 24 || !std::has_single_bit(
                                   static_cast<std::uint64_t>(per_day))) {
        throw std::invalid_argument(
            "window of " + std::to_string(w) +
            " hours does not give a power-of-two releases per day");
      }
    }
  }

  const std::vector<double> minutes =
      SyntheticCountStream(params.days, params.base_rate_per_hour,
                           SplitMix64(seed));

  std::vector<CountAccuracyRow> rows;
  for (int w : params.window_hours) {
    const std::int64_t window_minutes = 60 * w;
    const std::vector<double> truths = WindowTruths(minutes, window_minutes);
    for (std::size_t c = 0; c < params.configs.size(); ++c) {
      const CountConfig& config = params.configs[c];
      double sq_sum = 0.0;
      std::int64_t count = 0;
      const std::uint64_t config_seed =
          SplitMix64(seed + 0x9e37 * (c + 1) + static_cast<std::uint64_t>(w));

      if (params.mechanism == CountMechanism::kToeplitz) {
        const double sigma_g = ToeplitzMechanism::CalibrateSigma(
            config.delta_s, config.epsilon, params.dp_delta, kMinutesPerDay);
        const ToeplitzMechanism probe(kMinutesPerDay, sigma_g, 0);
        const double sigma_w = probe.MarginalStd(window_minutes - 1);
        for (std::int64_t trial = 0; trial < trials; ++trial) {
          NoiseSampler sampler(DeriveTrialSeed(config_seed, trial));
          for (double truth : truths) {
            const double rel = sampler.Gaussian(sigma_w) / truth;
            sq_sum += rel * rel;
            ++count;
          }
        }
      } else {
        const std::int64_t per_day = 24 / w;
        const double sigma_q =
            config.delta_s * std::numbers::sqrt2 / config.epsilon;
        const NoiseSpec leaf_noise =
            NoiseSpec::Laplace(sigma_q / std::numbers::sqrt2);
        for (std::int64_t trial = 0; trial < trials; ++trial) {
          BinaryTree tree(per_day, leaf_noise,
                          DeriveTrialSeed(config_seed, trial));
          for (std::size_t i = 0; i < truths.size(); ++i) {
            const auto releases = tree.AddLeaf(truths[i]);
            for (const ReleaseRecord& record : releases) {
              if (record.node.depth != tree.height()) continue;
              const double rel =
                  (record.noisy_value - truths[i]) / truths[i];
              sq_sum += rel * rel;
              ++count;
            }
            if (tree.leaf_index() == per_day) tree.ContainerEnd();
          }
        }
      }
      CountAccuracyRow row;
      row.window_hours = w;
      row.config = config.label;
      row.rmsre = std::sqrt(sq_sum / static_cast<double>(count));
      rows.push_back(row);
    }
  }
  return rows;
}

std::string FormatCountAccuracyCsv(
    const std::vector<CountAccuracyRow>& rows) {
  std::string out = "windowHours,config,rmsre\n";
  for (const CountAccuracyRow& row : rows) {
    out += std::to_string(row.window_hours) + "," + row.config + "," +
           FormatDouble(row.rmsre) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------
// Subway OD estimation.

SubwayOdParams SubwayOdParams::Defaults() {
  SubwayOdParams params;
  params.population = DefaultSubwayPopulation(7);
  params.epsilons = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10,
                     std::numeric_limits<double>::infinity()};
  return params;
}

std::vector<SubwayOdRow> SubwayOdSweep(const SubwayOdParams& params,
                                       std::uint64_t seed,
                                       std::int64_t trials) {
  if (trials < 1 || params.weeks < 1 || !(params.laplace_b > 0.0) ||
      params.epsilons.empty()) {
    throw std::invalid_argument("invalid subway sweep parameters");
  }
  const BatchGranularity granularities[] = {
      BatchGranularity::kHour, BatchGranularity::kDay, BatchGranularity::kWeek};

  std::map<std::pair<std::size_t, int>, double> sums;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trip_seed = DeriveTrialSeed(seed, trial);
    const std::vector<Trip> trips =
        GenerateTrips(params.population, params.weeks, trip_seed);

    std::vector<std::vector<OdHistogram>> truths;
    for (BatchGranularity g : granularities) {
      truths.push_back(BuildTruthHistograms(
          trips, params.population.station_count, g, params.weeks));
    }

    for (std::size_t e = 0; e < params.epsilons.size(); ++e) {
      ReportingPolicy policy;
      policy.epoch_capacity = params.epsilons[e];
      policy.eps_report = params.eps_report;
      const std::vector<TripReport> reports = SimulateReports(trips, policy);
      for (int g = 0; g < 3; ++g) {
        auto estimates = BuildReportedHistograms(
            reports, params.population.station_count, granularities[g],
            params.weeks);
        // The noise stream depends on the trial and the granularity but
        // not on epsilon, so the budget sweep is paired.
        NoiseSampler sampler(SplitMix64(trip_seed + 101 * (g + 1)));
        AddLaplaceNoise(estimates, params.laplace_b, sampler);
        sums[{e, g}] += MeanRmsre(estimates, truths[g]);
      }
    }
  }

  std::vector<SubwayOdRow> rows;
  for (std::size_t e = 0; e < params.epsilons.size(); ++e) {
    for (int g = 0; g < 3; ++g) {
      SubwayOdRow row;
      row.epsilon = params.epsilons[e];
      row.batch = granularities[g];
      row.rmsre = sums[{e, g}] / static_cast<double>(trials);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string FormatSubwayOdCsv(const std::vector<SubwayOdRow>& rows) {
  std::string out = "epsilon,batch,rmsre\n";
  for (const SubwayOdRow& row : rows) {
    out += FormatDouble(row.epsilon) + "," + BatchName(row.batch) + "," +
           FormatDouble(row.rmsre) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------
// Exit-observation sensitivity.

SelfIdParams SelfIdParams::Defaults() {
  SelfIdParams params;
  params.population = DefaultSubwayPopulation(7);
  return params;
}

std::vector<SelfIdPoint> SelfIdUtilitySweep(const SelfIdParams& params,
                                            std::uint64_t seed) {
  const std::vector<Trip> trips = GenerateTrips(
      params.population, params.weeks, DeriveTrialSeed(seed, 0));
  const std::vector<OdHistogram> truth =
      BuildTruthHistograms(trips, params.population.station_count,
                           BatchGranularity::kWeek, params.weeks);
  const TransferMap transfers = BuildTransferMap(
      truth, params.transfer_rate, params.transfer_active_bins,
      params.transfer_zero_bins, SplitMix64(seed + 42));
  return SelfIdSweep(truth, transfers, params.a_grid, params.p_grid,
                     params.laplace_b);
}

std::string FormatSelfIdCsv(const std::vector<SelfIdPoint>& points) {
  std::string out = "a,p,f1,rmsre\n";
  for (const SelfIdPoint& point : points) {
    out += FormatDouble(point.a) + "," + FormatDouble(point.p) + "," +
           FormatDouble(point.f1) + "," + FormatDouble(point.rmsre) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------
// Randomized rotation property runs.

std::vector<RotationPropsRow> RotationPropsSweep(std::uint64_t seed,
                                                 std::int64_t runs,
                                                 std::int64_t steps) {
  if (runs < 1 || steps < 1) {
    throw std::invalid_argument("runs and steps must be positive");
  }
  std::vector<RotationPropsRow> rows;
  for (std::int64_t run = 0; run < runs; ++run) {
    NoiseSampler sampler(DeriveTrialSeed(seed, run));
    ContainerConfig config;
    config.max_ec = 2 + static_cast<std::int64_t>(sampler.UniformInt(99));
    // The window guarantee needs warmup headroom, so stay at or below
    // the warned minEC = maxEC/2 boundary.
    config.min_ec =
        static_cast<std::int64_t>(sampler.UniformInt(config.max_ec / 2 + 1));
    ContainerSlot slot(config, RotationLimits{}, "sim");

    RotationPropsRow row;
    row.run = run;
    row.min_ec = config.min_ec;
    row.max_ec = config.max_ec;
    row.steps = steps;
    row.min_window = std::numeric_limits<std::int64_t>::max();
    row.max_window = 0;
    for (std::int64_t step = 0; step < steps; ++step) {
      slot.AdvanceFrame();
      row.max_live = std::max(row.max_live, slot.LiveInstanceCount());
      const VisibleWindow window = slot.Window();
      if (window.warming) continue;
      const auto size = static_cast<std::int64_t>(window.frames.size());
      row.min_window = std::min(row.min_window, size);
      row.max_window = std::max(row.max_window, size);
      if (size < config.min_ec || size > config.max_ec) ++row.violations;
      for (std::int64_t frame : window.frames) {
        if (slot.frame_index() - frame > config.max_ec) ++row.violations;
      }
      if (slot.LiveInstanceCount() > 2) ++row.violations;
    }
    if (row.min_window > row.max_window) row.min_window = 0;
    rows.push_back(row);
  }
  return rows;
}

std::string FormatRotationPropsCsv(const std::vector<RotationPropsRow>& rows) {
  std::string out =
      "run,minEC,maxEC,steps,minWindow,maxWindow,maxLive,violations\n";
  for (const RotationPropsRow& row : rows) {
    out += std::to_string(row.run) + "," + std::to_string(row.min_ec) + "," +
           std::to_string(row.max_ec) + "," + std::to_string(row.steps) +
           "," + std::to_string(row.min_window) + "," +
           std::to_string(row.max_window) + "," +
           std::to_string(row.max_live) + "," +
           std::to_string(row.violations) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------
// Dispatch and config parsing.

namespace {

std::string RunSniff(std::uint64_t seed,
                     std::map<std::string, std::string> overrides) {
  RejectUnknownKeys(overrides, {"intensity", "durationSeconds", "rows",
                                "cols", "blockLength", "maxEcSweep"});
  SniffParams params;
  if (auto it = overrides.find("intensity"); it != overrides.end()) {
    params.intensity = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("durationSeconds"); it != overrides.end()) {
    params.duration = ParseIntValue(it->first, it->second);
  }
  if (auto it = overrides.find("rows"); it != overrides.end()) {
    params.grid.rows = ParseIntValue(it->first, it->second);
  }
  if (auto it = overrides.find("cols"); it != overrides.end()) {
    params.grid.cols = ParseIntValue(it->first, it->second);
  }
  if (auto it = overrides.find("blockLength"); it != overrides.end()) {
    params.grid.block_length = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("maxEcSweep"); it != overrides.end()) {
    params.max_ec_sweep.clear();
    for (const std::string& part : SplitCommas(it->second)) {
      params.max_ec_sweep.push_back(ParseIntValue(it->first, part));
    }
  }
  return FormatSniffCsv(SniffSweep(params, seed));
}

std::string RunCountAccuracy(std::uint64_t seed, std::int64_t trials,
                             std::map<std::string, std::string> overrides) {
  RejectUnknownKeys(overrides, {"mechanism", "days", "baseRatePerHour",
                                "windows", "dpDelta"});
  CountAccuracyParams params;
  if (auto it = overrides.find("mechanism"); it != overrides.end()) {
    if (it->second == "toeplitz") {
      params.mechanism = CountMechanism::kToeplitz;
    } else if (it->second == "tree") {
      params.mechanism = CountMechanism::kBinaryTree;
    } else {
      throw std::invalid_argument("mechanism must be toeplitz or tree");
    }
  }
  if (auto it = overrides.find("days"); it != overrides.end()) {
    params.days = static_cast<int>(ParseIntValue(it->first, it->second));
  }
  if (auto it = overrides.find("baseRatePerHour"); it != overrides.end()) {
    params.base_rate_per_hour = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("dpDelta"); it != overrides.end()) {
    params.dp_delta = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("windows"); it != overrides.end()) {
    params.window_hours.clear();
    for (const std::string& part : SplitCommas(it->second)) {
      params.window_hours.push_back(
          static_cast<int>(ParseIntValue(it->first, part)));
    }
  }
  if (trials == 0) trials = 1000;
  return FormatCountAccuracyCsv(CountAccuracySweep(params, seed, trials));
}

std::string RunSubwayOd(std::uint64_t seed, std::int64_t trials,
                        std::map<std::string, std::string> overrides) {
  const auto population_kv = TakePopulationKeys(overrides);
  RejectUnknownKeys(overrides, {"weeks", "laplaceB", "epsReport", "epsilons"});
  SubwayOdParams params = SubwayOdParams::Defaults();
  if (!population_kv.empty()) {
    params.population = ParseRiderPopulationConfig(population_kv);
  }
  if (auto it = overrides.find("weeks"); it != overrides.end()) {
    params.weeks = ParseIntValue(it->first, it->second);
  }
  if (auto it = overrides.find("laplaceB"); it != overrides.end()) {
    params.laplace_b = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("epsReport"); it != overrides.end()) {
    params.eps_report = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("epsilons"); it != overrides.end()) {
    params.epsilons.clear();
    for (const std::string& part : SplitCommas(it->second)) {
      params.epsilons.push_back(ParseDoubleValue(it->first, part));
    }
  }
  if (trials == 0) trials = 5;
  return FormatSubwayOdCsv(SubwayOdSweep(params, seed, trials));
}

std::string RunSelfId(std::uint64_t seed,
                      std::map<std::string, std::string> overrides) {
  const auto population_kv = TakePopulationKeys(overrides);
  RejectUnknownKeys(overrides,
                    {"weeks", "laplaceB", "transferRate", "transferActiveBins",
                     "transferZeroBins", "aGrid", "pGrid"});
  SelfIdParams params = SelfIdParams::Defaults();
  if (!population_kv.empty()) {
    params.population = ParseRiderPopulationConfig(population_kv);
  }
  if (auto it = overrides.find("weeks"); it != overrides.end()) {
    params.weeks = ParseIntValue(it->first, it->second);
  }
  if (auto it = overrides.find("laplaceB"); it != overrides.end()) {
    params.laplace_b = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("transferRate"); it != overrides.end()) {
    params.transfer_rate = ParseDoubleValue(it->first, it->second);
  }
  if (auto it = overrides.find("transferActiveBins"); it != overrides.end()) {
    params.transfer_active_bins = ParseIntValue(it->first, it->second);
  }
  if (auto it = overrides.find("transferZeroBins"); it != overrides.end()) {
    params.transfer_zero_bins = ParseIntValue(it->first, it->second);
  }
  if (auto it = overrides.find("aGrid"); it != overrides.end()) {
    params.a_grid.clear();
    for (const std::string& part : SplitCommas(it->second)) {
      params.a_grid.push_back(ParseDoubleValue(it->first, part));
    }
  }
  if (auto it = overrides.find("pGrid"); it != overrides.end()) {
    params.p_grid.clear();
    for (const std::string& part : SplitCommas(it->second)) {
      params.p_grid.push_back(ParseDoubleValue(it->first, part));
    }
  }
  return FormatSelfIdCsv(SelfIdUtilitySweep(params, seed));
}

std::string RunRotationProps(std::uint64_t seed, std::int64_t trials,
                             std::map<std::string, std::string> overrides) {
  RejectUnknownKeys(overrides, {"steps"});
  std::int64_t steps = 1000;
  if (auto it = overrides.find("steps"); it != overrides.end()) {
    steps = ParseIntValue(it->first, it->second);
  }
  if (trials == 0) trials = 100;
  return FormatRotationPropsCsv(RotationPropsSweep(seed, trials, steps));
}

}  // namespace

std::string RunExperimentCsv(const ExperimentConfig& config) {
  if (config.trials < 0) {
    throw std::invalid_argument("trials must be positive");
  }
  if (config.experiment == "sniff") {
    return RunSniff(config.seed, config.overrides);
  }
  if (config.experiment == "count-accuracy") {
    return RunCountAccuracy(config.seed, config.trials, config.overrides);
  }
  if (config.experiment == "subway-od") {
    return RunSubwayOd(config.seed, config.trials, config.overrides);
  }
  if (config.experiment == "selfid-utility") {
    return RunSelfId(config.seed, config.overrides);
  }
  if (config.experiment == "rotation-props") {
    return RunRotationProps(config.seed, config.trials, config.overrides);
  }
  throw std::invalid_argument("unknown experiment: " + config.experiment);
}

std::map<std::string, std::string> ParseKeyValueFile(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("malformed config line " +
                                  std::to_string(line_number));
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("empty key on config line " +
                                  std::to_string(line_number));
    }
    kv[key] = value;
  }
  return kv;
}

}  // namespace edgedp
