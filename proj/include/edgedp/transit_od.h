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
// Transit origin-destination estimation from device-mediated reports.
// Riders take trips; each rider's device decides per trip whether the
// report is real or a null, by charging a fixed epsilon against that
// week's budget; an untrusted aggregator bins the real reports into
// per-batch OD histograms and adds Laplace noise to every bin.

#ifndef EDGEDP_TRANSIT_OD_H_
#define EDGEDP_TRANSIT_OD_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edgedp/core_model.h"
#include "edgedp/noise.h"

namespace edgedp {

// Probability mass function over weekly trip counts; pmf[k] is the
// probability of taking exactly k trips in a week.
struct TripDistribution {
  std::vector<double> pmf;

  double Mean() const;

  // Mixture of a light majority and a heavy tail: with probability
  // light_share the count is uniform on {1..light_max}, otherwise
  // uniform on {light_max+1..heavy_max}.
  static TripDistribution CommuterMix(double light_share, int light_max,
                                      int heavy_max);
};

struct RiderPopulation {
  std::int64_t riders = 0;
  std::int64_t station_count = 0;
  TripDistribution trips;
  // Row-major station_count x station_count destination weights. Row r
  // holds the destination distribution for origin r and must sum to 1.
  // Origins are drawn uniformly.
  std::vector<double> od_propensity;
};

// 100k riders over 80 stations, 7 active destinations per origin with
// uniform weights, weekly trip counts 93% uniform{1..10} and 7%
// uniform{11..20}. The active-destination choice is seeded.
RiderPopulation DefaultSubwayPopulation(std::uint64_t propensity_seed);

// Builds a population from flat key=value pairs: riders, stationCount,
// activeDestinations, lightShare, lightMax, heavyMax, propensitySeed.
// Missing keys fall back to the defaults above; unknown keys throw.
RiderPopulation ParseRiderPopulationConfig(
    const std::map<std::string, std::string>& kv);

struct Trip {
  std::int64_t rider = 0;
  Seconds time = 0;
  std::int32_t origin = 0;
  std::int32_t dest = 0;
};

// Deterministic given the seed. Trips are grouped by rider in ascending
// rider order and chronological within each rider. Times are uniform
// within each week of the horizon.
std::vector<Trip> GenerateTrips(const RiderPopulation& pop,
                                std::int64_t weeks, std::uint64_t seed);

struct TripReport {
  std::int64_t rider = 0;
  Seconds time = 0;
  std::int32_t origin = 0;
  std::int32_t dest = 0;
  // When false the device uploaded a null: the envelope went out on
  // schedule but carries no payload, and the aggregate never sees the
  // trip.
  bool real = false;
};

struct ReportingPolicy {
  // Weekly budget per device; may be infinity.
  double epoch_capacity = 0.0;
  double eps_report = 0.5;
};

// Runs every trip through its rider's ledger in order. Each rider gets
// floor(epoch_capacity / eps_report) real reports per week; the rest
// become nulls. Trips must be grouped by rider and chronological within
// each rider.
std::vector<TripReport> SimulateReports(const std::vector<Trip>& trips,
                                        const ReportingPolicy& policy);

enum class BatchGranularity {
  kHour,
  kDay,
  kWeek,
};

Seconds BatchSeconds(BatchGranularity granularity);
std::string BatchName(BatchGranularity granularity);

struct OdHistogram {
  std::int64_t station_count = 0;
  BatchGranularity batch = BatchGranularity::kWeek;
  std::int64_t batch_index = 0;
  // Row-major origin x destination counts.
  std::vector<double> bins;

  double At(std::int64_t origin, std::int64_t dest) const;
  double& At(std::int64_t origin, std::int64_t dest);
};

// One histogram per batch over the whole horizon, empty batches
// included. Truth bins every trip; the reported variant bins only real
// reports.
std::vector<OdHistogram> BuildTruthHistograms(const std::vector<Trip>& trips,
                                              std::int64_t station_count,
                                              BatchGranularity granularity,
                                              std::int64_t weeks);
std::vector<OdHistogram> BuildReportedHistograms(
    const std::vector<TripReport>& reports, std::int64_t station_count,
    BatchGranularity granularity, std::int64_t weeks);

// Adds independent Laplace(b) noise to every bin of every batch,
// zero-count bins included.
void AddLaplaceNoise(std::vector<OdHistogram>& hists, double b,
                     NoiseSampler& sampler);

struct OdError {
  // Root mean squared relative error over bins with positive truth.
  double rmsre = 0.0;
  // Absolute estimated mass summed over bins whose truth is zero.
  double spurious_mass = 0.0;
  std::int64_t positive_bins = 0;
  std::int64_t zero_bins = 0;
};

// Throws if the shapes differ or the truth is identically zero.
OdError OdErrorOf(const OdHistogram& estimate, const OdHistogram& truth);

// Mean per-batch RMSRE, skipping batches whose truth is all zero.
double MeanRmsre(const std::vector<OdHistogram>& estimates,
                 const std::vector<OdHistogram>& truths);

// Expected misattributed exits per weekly batch and bin, produced by
// riders whose exit station was inferred rather than observed.
struct TransferMap {
  std::int64_t station_count = 0;
  std::vector<double> weekly_volume;

  double Total() const;
};

// Concentrates the transfer volume where it hurts: half the mass lands
// on the lowest-truth active bins, half on bins with no true traffic at
// all. rate scales the total against the mean weekly trip volume.
TransferMap BuildTransferMap(const std::vector<OdHistogram>& weekly_truth,
                             double rate, std::int64_t active_target,
                             std::int64_t zero_target, std::uint64_t seed);

// Expected signed error of one bin when exits are observed with
// probability a and unobserved exits are guessed, landing on this bin
// with transfer volume n_transfer at guess propensity p.
double SelfIdExpectedBinError(double a, double p, double n_true,
                              double n_transfer);

struct SelfIdPoint {
  double a = 0.0;
  double p = 0.0;
  double f1 = 0.0;
  double rmsre = 0.0;
};

// Closed-form sweep over the observation grid: per-bin expected error
// from SelfIdExpectedBinError plus the 2b^2 noise variance, averaged
// into an expected RMSRE per weekly batch. No sampling is involved, so
// a = 1 lands on the pure noise floor exactly.
std::vector<SelfIdPoint> SelfIdSweep(const std::vector<OdHistogram>& truth,
                                     const TransferMap& transfers,
                                     const std::vector<double>& a_grid,
                                     const std::vector<double>& p_grid,
                                     double laplace_b);

// Expected RMSRE of a fully observed pipeline under Laplace(b) noise;
// identical to the a = 1 row of SelfIdSweep.
double AnalyticNoiseFloor(const std::vector<OdHistogram>& truth,
                          double laplace_b);

}  // namespace edgedp

#endif  // EDGEDP_TRANSIT_OD_H_
