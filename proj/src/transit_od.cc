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

#include "edgedp/transit_od.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "edgedp/device_ledger.h"

namespace edgedp {

namespace {

constexpr double kPmfTolerance = 1e-9;
constexpr double kRowTolerance = 1e-6;

void ValidatePopulation(const RiderPopulation& pop) {
  if (pop.riders <= 0) {
    throw std::invalid_argument("population must have riders");
  }
  if (pop.station_count < 2) {
    throw std::invalid_argument("population needs at least two stations");
  }
  const auto& pmf = pop.trips.pmf;
  if (pmf.empty()) {
    throw std::invalid_argument("trip distribution is empty");
  }
  double mass = 0.0;
  for (double p : pmf) {
    if (p < 0.0) {
      throw std::invalid_argument("trip pmf has negative mass");
    }
    mass += p;
  }
  if (std::abs(mass - 1.0) > kPmfTolerance) {
    throw std::invalid_argument("trip pmf does not sum to 1");
  }
  const std::int64_t s = pop.station_count;
  if (static_cast<std::int64_t>(pop.od_propensity.size()) != s * s) {
    throw std::invalid_argument("propensity matrix has wrong shape");
  }
  for (std::int64_t o = 0; o < s; ++o) {
    double row = 0.0;
    for (std::int64_t d = 0; d < s; ++d) {
      const double w = pop.od_propensity[o * s + d];
      if (w < 0.0) {
        throw std::invalid_argument("propensity weights must be non-negative");
      }
      row += w;
    }
    if (std::abs(row - 1.0) > kRowTolerance) {
      throw std::invalid_argument("propensity row does not sum to 1");
    }
  }
}

RiderPopulation BuildPopulation(std::int64_t riders, std::int64_t stations,
                                std::int64_t active_destinations,
                                double light_share, int light_max,
                                int heavy_max, std::uint64_t propensity_seed) {
  if (stations < 2 || active_destinations < 1 ||
      active_destinations > stations - 1) {
    throw std::invalid_argument("invalid station geometry");
  }
  RiderPopulation pop;
  pop.riders = riders;
  pop.station_count = stations;
  pop.trips = TripDistribution::CommuterMix(light_share, light_max, heavy_max);
  pop.od_propensity.assign(stations * stations, 0.0);

  NoiseSampler sampler(propensity_seed);
  std::vector<std::int64_t> candidates;
  for (std::int64_t o = 0; o < stations; ++o) {
    candidates.clear();
    for (std::int64_t d = 0; d < stations; ++d) {
      if (d != o) candidates.push_back(d);
    }
    for (std::int64_t k = 0; k < active_destinations; ++k) {
      const std::uint64_t pick =
          k + sampler.UniformInt(candidates.size() - k);
      std::swap(candidates[k], candidates[pick]);
      pop.od_propensity[o * stations + candidates[k]] =
          1.0 / static_cast<double>(active_destinations);
    }
  }
  return pop;
}

std::int64_t ParseIntField(const std::map<std::string, std::string>& kv,
                           const std::string& key, std::int64_t fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  return std::stoll(it->second);
}

double ParseDoubleField(const std::map<std::string, std::string>& kv,
                        const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  return std::stod(it->second);
}

}  // namespace

double TripDistribution::Mean() const {
  double mean = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    mean += static_cast<double>(k) * pmf[k];
  }
  return mean;
}

TripDistribution TripDistribution::CommuterMix(double light_share,
                                               int light_max, int heavy_max) {
  if (light_share < 0.0 || light_share > 1.0 || light_max < 1 ||
      heavy_max <= light_max) {
    throw std::invalid_argument("invalid commuter mix parameters");
  }
  TripDistribution dist;
  dist.pmf.assign(heavy_max + 1, 0.0);
  for (int k = 1; k <= light_max; ++k) {
    dist.pmf[k] = light_share / light_max;
  }
  for (int k = light_max + 1; k <= heavy_max; ++k) {
    dist.pmf[k] = (1.0 - light_share) / (heavy_max - light_max);
  }
  return dist;
}

RiderPopulation DefaultSubwayPopulation(std::uint64_t propensity_seed) {
  return BuildPopulation(100000, 80, 7, 0.93, 10, 20, propensity_seed);
}

RiderPopulation ParseRiderPopulationConfig(
    const std::map<std::string, std::string>& kv) {
  static const char* kKnown[] = {"riders",   "stationCount", "activeDestinations",
                                 "lightShare", "lightMax",   "heavyMax",
                                 "propensitySeed"};
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const char* name : kKnown) {
      if (key == name) known = true;
    }
    if (!known) {
      throw std::invalid_argument("unknown population key: " + key);
    }
  }
  return BuildPopulation(
      ParseIntField(kv, "riders", 100000),
      ParseIntField(kv, "stationCount", 80),
      ParseIntField(kv, "activeDestinations", 7),
      ParseDoubleField(kv, "lightShare", 0.93),
      static_cast<int>(ParseIntField(kv, "lightMax", 10)),
      static_cast<int>(ParseIntField(kv, "heavyMax", 20)),
      static_cast<std::uint64_t>(ParseIntField(kv, "propensitySeed", 7)));
}

std::vector<Trip> GenerateTrips(const RiderPopulation& pop,
                                std::int64_t weeks, std::uint64_t seed) {
  ValidatePopulation(pop);
  if (weeks < 1) {
    throw std::invalid_argument("horizon must cover at least one week");
  }

  const std::int64_t s = pop.station_count;
  std::vector<double> pmf_cdf(pop.trips.pmf.size());
  std::partial_sum(pop.trips.pmf.begin(), pop.trips.pmf.end(),
                   pmf_cdf.begin());
  std::vector<double> row_cdf(pop.od_propensity.size());
  for (std::int64_t o = 0; o < s; ++o) {
    std::partial_sum(pop.od_propensity.begin() + o * s,
                     pop.od_propensity.begin() + (o + 1) * s,
                     row_cdf.begin() + o * s);
  }

  NoiseSampler sampler(seed);
  std::vector<Trip> trips;
  trips.reserve(static_cast<std::size_t>(
      static_cast<double>(pop.riders) * weeks * pop.trips.Mean() * 1.05));

  std::vector<Trip> rider_week;
  for (std::int64_t rider = 0; rider < pop.riders; ++rider) {
    for (std::int64_t week = 0; week < weeks; ++week) {
      const double u = sampler.Uniform();
      const std::size_t count =
          std::upper_bound(pmf_cdf.begin(), pmf_cdf.end(), u) -
          pmf_cdf.begin();
      rider_week.clear();
      for (std::size_t k = 0; k < count; ++k) {
        Trip trip;
        trip.rider = rider;
        trip.time = week * kEpochSeconds +
                    static_cast<Seconds>(sampler.Uniform() * kEpochSeconds);
        trip.origin = static_cast<std::int32_t>(sampler.UniformInt(s));
        const double v = sampler.Uniform();
        const auto row_begin = row_cdf.begin() + trip.origin * s;
        std::int64_t dest =
            std::upper_bound(row_begin, row_begin + s, v) - row_begin;
        if (dest >= s) dest = s - 1;
        trip.dest = static_cast<std::int32_t>(dest);
        rider_week.push_back(trip);
      }
      std::sort(rider_week.begin(), rider_week.end(),
                [](const Trip& a, const Trip& b) { return a.time < b.time; });
      trips.insert(trips.end(), rider_week.begin(), rider_week.end());
    }
  }
  return trips;
}

std::vector<TripReport> SimulateReports(const std::vector<Trip>& trips,
                                        const ReportingPolicy& policy) {
  if (!(policy.eps_report > 0.0)) {
    throw std::invalid_argument("report epsilon must be positive");
  }
  if (!(policy.epoch_capacity >= 0.0)) {
    throw std::invalid_argument("epoch capacity must be non-negative");
  }

  std::vector<TripReport> reports;
  reports.reserve(trips.size());
  std::int64_t current_rider = -1;
  Seconds last_time = 0;
  std::unique_ptr<DeviceLedger> ledger;
  for (const Trip& trip : trips) {
    if (trip.rider != current_rider) {
      if (trip.rider < current_rider) {
        throw std::invalid_argument("trips must be grouped by rider");
      }
      current_rider = trip.rider;
      last_time = trip.time;
      ledger = std::make_unique<DeviceLedger>(
          "rider" + std::to_string(trip.rider), policy.epoch_capacity);
    } else if (trip.time < last_time) {
      throw std::invalid_argument("rider trips must be chronological");
    }
    last_time = trip.time;

    TripReport report;
    report.rider = trip.rider;
    report.time = trip.time;
    report.origin = trip.origin;
    report.dest = trip.dest;
    report.real = ledger->ChargeReport(EpochOf(trip.time),
                                       policy.eps_report) ==
                  ReportOutcome::kReal;
    reports.push_back(report);
  }
  return reports;
}

Seconds BatchSeconds(BatchGranularity granularity) {
  switch (granularity) {
    case BatchGranularity::kHour:
      return 3600;
    case BatchGranularity::kDay:
      return 24 * 3600;
    case BatchGranularity::kWeek:
      return kEpochSeconds;
  }
  throw std::invalid_argument("unknown batch granularity");
}

std::string BatchName(BatchGranularity granularity) {
  switch (granularity) {
    case BatchGranularity::kHour:
      return "hour";
    case BatchGranularity::kDay:
      return "day";
    case BatchGranularity::kWeek:
      return "week";
  }
  throw std::invalid_argument("unknown batch granularity");
}

double OdHistogram::At(std::int64_t origin, std::int64_t dest) const {
  return bins[origin * station_count + dest];
}

double& OdHistogram::At(std::int64_t origin, std::int64_t dest) {
  return bins[origin * station_count + dest];
}

namespace {

std::vector<OdHistogram> EmptyHistograms(std::int64_t station_count,
                                         BatchGranularity granularity,
                                         std::int64_t weeks) {
  if (station_count < 1 || weeks < 1) {
    throw std::invalid_argument("invalid histogram shape");
  }
  const std::int64_t batches = weeks * kEpochSeconds / BatchSeconds(granularity);
  std::vector<OdHistogram> hists(batches);
  for (std::int64_t i = 0; i < batches; ++i) {
    hists[i].station_count = station_count;
    hists[i].batch = granularity;
    hists[i].batch_index = i;
    hists[i].bins.assign(station_count * station_count, 0.0);
  }
  return hists;
}

template <typename Row>
void BinInto(std::vector<OdHistogram>& hists, const Row& row,
             BatchGranularity granularity) {
  const Seconds width = BatchSeconds(granularity);
  const std::int64_t index = row.time / width;
  if (row.time < 0 || index >= static_cast<std::int64_t>(hists.size())) {
    throw std::invalid_argument("record outside the histogram horizon");
  }
  OdHistogram& hist = hists[index];
  if (row.origin < 0 || row.origin >= hist.station_count || row.dest < 0 ||
      row.dest >= hist.station_count) {
    throw std::invalid_argument("station id out of range");
  }
  hist.At(row.origin, row.dest) += 1.0;
}

}  // namespace

std::vector<OdHistogram> BuildTruthHistograms(const std::vector<Trip>& trips,
                                              std::int64_t station_count,
                                              BatchGranularity granularity,
                                              std::int64_t weeks) {
  auto hists = EmptyHistograms(station_count, granularity, weeks);
  for (const Trip& trip : trips) {
    BinInto(hists, trip, granularity);
  }
  return hists;
}

std::vector<OdHistogram> BuildReportedHistograms(
    const std::vector<TripReport>& reports, std::int64_t station_count,
    BatchGranularity granularity, std::int64_t weeks) {
  auto hists = EmptyHistograms(station_count, granularity, weeks);
  for (const TripReport& report : reports) {
    if (!report.real) continue;
    BinInto(hists, report, granularity);
  }
  return hists;
}

void AddLaplaceNoise(std::vector<OdHistogram>& hists, double b,
                     NoiseSampler& sampler) {
  if (!(b > 0.0)) {
    throw std::invalid_argument("laplace scale must be positive");
  }
  for (OdHistogram& hist : hists) {
    for (double& bin : hist.bins) {
      bin += sampler.Laplace(b);
    }
  }
}

OdError OdErrorOf(const OdHistogram& estimate, const OdHistogram& truth) {
  if (estimate.station_count != truth.station_count ||
      estimate.bins.size() != truth.bins.size()) {
    throw std::invalid_argument("histogram shapes differ");
  }
  OdError error;
  double sq_sum = 0.0;
  for (std::size_t i = 0; i < truth.bins.size(); ++i) {
    const double t = truth.bins[i];
    if (t > 0.0) {
      const double rel = (estimate.bins[i] - t) / t;
      sq_sum += rel * rel;
      ++error.positive_bins;
    } else {
      error.spurious_mass += std::abs(estimate.bins[i]);
      ++error.zero_bins;
    }
  }
  if (error.positive_bins == 0) {
    throw std::invalid_argument("truth histogram is identically zero");
  }
  error.rmsre = std::sqrt(sq_sum / static_cast<double>(error.positive_bins));
  return error;
}

double MeanRmsre(const std::vector<OdHistogram>& estimates,
                 const std::vector<OdHistogram>& truths) {
  if (estimates.size() != truths.size() || truths.empty()) {
    throw std::invalid_argument("batch lists differ in length");
  }
  double sum = 0.0;
  std::int64_t counted = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const bool has_truth =
        std::any_of(truths[i].bins.begin(), truths[i].bins.end(),
                    [](double v) { return v > 0.0; });
    if (!has_truth) continue;
    sum += OdErrorOf(estimates[i], truths[i]).rmsre;
    ++counted;
  }
  if (counted == 0) {
    throw std::invalid_argument("no batch has positive truth");
  }
  return sum / static_cast<double>(counted);
}

double TransferMap::Total() const {
  return std::accumulate(weekly_volume.begin(), weekly_volume.end(), 0.0);
}

TransferMap BuildTransferMap(const std::vector<OdHistogram>& weekly_truth,
                             double rate, std::int64_t active_target,
                             std::int64_t zero_target, std::uint64_t seed) {
  if (weekly_truth.empty()) {
    throw std::invalid_argument("need at least one weekly truth batch");
  }
  if (!(rate > 0.0) || active_target < 1 || zero_target < 1) {
    throw std::invalid_argument("invalid transfer parameters");
  }
  const std::int64_t s = weekly_truth.front().station_count;
  std::vector<double> mean_truth(s * s, 0.0);
  for (const OdHistogram& hist : weekly_truth) {
    for (std::size_t i = 0; i < mean_truth.size(); ++i) {
      mean_truth[i] += hist.bins[i];
    }
  }
  double total_trips = 0.0;
  for (double& v : mean_truth) {
    v /= static_cast<double>(weekly_truth.size());
    total_trips += v;
  }

  std::vector<std::size_t> active;
  std::vector<std::size_t> zero;
  for (std::size_t i = 0; i < mean_truth.size(); ++i) {
    (mean_truth[i] > 0.0 ? active : zero).push_back(i);
  }
  if (static_cast<std::int64_t>(active.size()) < active_target ||
      static_cast<std::int64_t>(zero.size()) < zero_target) {
    throw std::invalid_argument("not enough bins for the transfer layout");
  }
  std::sort(active.begin(), active.end(),
            [&](std::size_t a, std::size_t b) {
              if (mean_truth[a] != mean_truth[b]) {
                return mean_truth[a] < mean_truth[b];
              }
              return a < b;
            });

  TransferMap map;
  map.station_count = s;
  map.weekly_volume.assign(s * s, 0.0);
  const double total = rate * total_trips;
  for (std::int64_t k = 0; k < active_target; ++k) {
    map.weekly_volume[active[k]] = 0.5 * total / active_target;
  }
  NoiseSampler sampler(seed);
  for (std::int64_t k = 0; k < zero_target; ++k) {
    const std::uint64_t pick = k + sampler.UniformInt(zero.size() - k);
    std::swap(zero[k], zero[pick]);
    map.weekly_volume[zero[k]] = 0.5 * total / zero_target;
  }
  return map;
}

double SelfIdExpectedBinError(double a, double p, double n_true,
                              double n_transfer) {
  return (a - 1.0) * n_true + (1.0 - a) * p * n_transfer;
}

namespace {

double ExpectedRmsre(const std::vector<OdHistogram>& truth,
                     const TransferMap& transfers, double a, double p,
                     double laplace_b) {
  const double noise_var = 2.0 * laplace_b * laplace_b;
  double batch_sum = 0.0;
  std::int64_t counted = 0;
  for (const OdHistogram& hist : truth) {
    double sq_sum = 0.0;
    std::int64_t positive = 0;
    for (std::size_t i = 0; i < hist.bins.size(); ++i) {
      const double t = hist.bins[i];
      if (t <= 0.0) continue;
      const double err =
          SelfIdExpectedBinError(a, p, t, transfers.weekly_volume[i]);
      sq_sum += (err * err + noise_var) / (t * t);
      ++positive;
    }
    if (positive == 0) continue;
    batch_sum += std::sqrt(sq_sum / static_cast<double>(positive));
    ++counted;
  }
  if (counted == 0) {
    throw std::invalid_argument("no batch has positive truth");
  }
  return batch_sum / static_cast<double>(counted);
}

}  // namespace

std::vector<SelfIdPoint> SelfIdSweep(const std::vector<OdHistogram>& truth,
                                     const TransferMap& transfers,
                                     const std::vector<double>& a_grid,
                                     const std::vector<double>& p_grid,
                                     double laplace_b) {
  if (truth.empty() || a_grid.empty() || p_grid.empty()) {
    throw std::invalid_argument("empty sweep input");
  }
  if (static_cast<std::int64_t>(transfers.weekly_volume.size()) !=
      truth.front().station_count * truth.front().station_count) {
    throw std::invalid_argument("transfer map shape differs from truth");
  }
  double true_total = 0.0;
  for (const OdHistogram& hist : truth) {
    for (double v : hist.bins) true_total += v;
  }
  true_total /= static_cast<double>(truth.size());
  const double transfer_total = transfers.Total();

  std::vector<SelfIdPoint> points;
  for (double a : a_grid) {
    if (a < 0.0 || a > 1.0) {
      throw std::invalid_argument("observation rate must lie in [0,1]");
    }
    for (double p : p_grid) {
      if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("guess propensity must lie in [0,1]");
      }
      SelfIdPoint point;
      point.a = a;
      point.p = p;
      point.rmsre = ExpectedRmsre(truth, transfers, a, p, laplace_b);
      const double recall = a;
      const double guessed = p * (1.0 - a) * transfer_total;
      const double precision_den = a * true_total + guessed;
      const double precision =
          precision_den > 0.0 ? a * true_total / precision_den : 0.0;
      point.f1 = (recall + precision > 0.0)
                     ? 2.0 * precision * recall / (precision + recall)
                     : 0.0;
      points.push_back(point);
    }
  }
  return points;
}

double AnalyticNoiseFloor(const std::vector<OdHistogram>& truth,
                          double laplace_b) {
  TransferMap none;
  if (truth.empty()) {
    throw std::invalid_argument("empty truth");
  }
  none.station_count = truth.front().station_count;
  none.weekly_volume.assign(none.station_count * none.station_count, 0.0);
  return ExpectedRmsre(truth, none, 1.0, 0.0, laplace_b);
}

}  // namespace edgedp
