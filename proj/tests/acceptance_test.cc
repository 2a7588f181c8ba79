// Copyright 2026 The EdgeDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Release-gate checks for the whole pipeline. Each test covers one
// numbered criterion and the listener in main() prints a one-line
// verdict per criterion, so a full run reads as a ten-point checklist.
// Tolerances and runtime budgets are pinned as constants next to the
// test that uses them; loosening one is a release decision, not a test
// tweak.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "edgedp/binary_tree.h"
#include "edgedp/capture_attack.h"
#include "edgedp/device_ledger.h"
#include "edgedp/ephemeral_runtime.h"
#include "edgedp/experiments.h"
#include "edgedp/noise.h"
#include "edgedp/query_engine.h"
#include "edgedp/transit_od.h"

namespace edgedp {
namespace {

class Stopwatch {
 public:
  double ElapsedSeconds() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::int64_t HeightOf(std::int64_t n) {
  return std::countr_zero(static_cast<std::uint64_t>(n));
}

// Criterion 1: with noise switched off, every interval estimate the
// store can answer must equal the plain running sum, bit for bit.
constexpr double kZeroNoiseRuntimeBudgetSeconds = 5.0;

TEST(Acceptance, Criterion01ZeroNoiseEstimatesMatchBruteForce) {
  const Stopwatch timer;
  for (const std::int64_t n : {2, 4, 8, 16, 32, 64}) {
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
      NoiseSampler rng(DeriveTrialSeed(1001, static_cast<std::uint64_t>(n) * 100 + stream));
      std::vector<double> prefix(static_cast<std::size_t>(2 * n + 1), 0.0);
      ReleaseStore store(n);
      BinaryTree tree(n, NoiseSpec::None(), 0);
      for (std::int64_t t = 1; t <= 2 * n; ++t) {
        const double leaf = static_cast<double>(rng.UniformInt(1000));
        prefix[static_cast<std::size_t>(t)] =
            prefix[static_cast<std::size_t>(t - 1)] + leaf;
        store.IngestAll(tree.AddLeaf(leaf));
        if (t % n == 0) store.Ingest(tree.ContainerEnd());
      }
      ASSERT_EQ(store.MaxReleasedAw(), 2 * n);
      for (std::int64_t first = 1; first <= 2 * n; ++first) {
        for (std::int64_t last = first; last <= 2 * n; ++last) {
          const IntervalEstimate est = store.EstimateInterval(first, last);
          ASSERT_EQ(est.estimate, prefix[static_cast<std::size_t>(last)] -
                                      prefix[static_cast<std::size_t>(first - 1)])
              << "n=" << n << " stream=" << stream << " [" << first << ","
              << last << "]";
        }
      }
    }
  }
  EXPECT_LT(timer.ElapsedSeconds(), kZeroNoiseRuntimeBudgetSeconds);
}

// Criterion 2: exhaustive decomposition audit. Every canonical
// decomposition tiles its interval, stays within the size bound, and
// prefixes and suffixes hit their popcount sizes exactly.
constexpr double kDecompositionRuntimeBudgetSeconds = 10.0;

TEST(Acceptance, Criterion02DecompositionSizesStayWithinBounds) {
  const Stopwatch timer;
  for (std::int64_t n = 2; n <= 256; n *= 2) {
    const std::int64_t height = HeightOf(n);
    for (std::int64_t first = 1; first <= n; ++first) {
      for (std::int64_t last = first; last <= n; ++last) {
        const CanonicalDecomposition dec = CanonicalDecompose(first, last, n);
        ASSERT_LE(static_cast<std::int64_t>(dec.nodes.size()),
                  DecompositionBound(n))
            << "n=" << n << " [" << first << "," << last << "]";
        std::vector<TreeNode> ordered = dec.nodes;
        std::sort(ordered.begin(), ordered.end(),
                  [height](const TreeNode& a, const TreeNode& b) {
                    return a.FirstLeaf(height) < b.FirstLeaf(height);
                  });
        std::int64_t cursor = first;
        for (const TreeNode& node : ordered) {
          ASSERT_EQ(node.FirstLeaf(height), cursor);
          cursor = node.LastLeaf(height) + 1;
        }
        ASSERT_EQ(cursor, last + 1);
        if (first == 1) {
          ASSERT_EQ(dec.nodes.size(),
                    static_cast<std::size_t>(
                        std::popcount(static_cast<std::uint64_t>(last))));
        }
        if (last == n) {
          ASSERT_EQ(dec.nodes.size(),
                    static_cast<std::size_t>(std::popcount(
                        static_cast<std::uint64_t>(n - first + 1))));
        }
      }
    }
  }
  EXPECT_LT(timer.ElapsedSeconds(), kDecompositionRuntimeBudgetSeconds);
}

// Criterion 3: count how many releases each leaf's value flows into
// over one container. Every leaf sits in one tree node per level, and
// the second half additionally feeds the bridge release at container
// end.
TEST(Acceptance, Criterion03ReleaseParticipationMatchesDepthRule) {
  for (const std::int64_t n : {4, 8, 16, 32, 64}) {
    const std::int64_t height = HeightOf(n);
    std::vector<int> participation(static_cast<std::size_t>(n + 1), 0);
    BinaryTree tree(n, NoiseSpec::None(), 0);
    std::int64_t total_releases = 0;
    for (std::int64_t t = 1; t <= n; ++t) {
      const std::vector<ReleaseRecord> records = tree.AddLeaf(1.0);
      ASSERT_EQ(records.size(),
                static_cast<std::size_t>(
                    std::countr_zero(static_cast<std::uint64_t>(t)) + 1));
      for (const ReleaseRecord& record : records) {
        for (std::int64_t leaf = record.node.FirstLeaf(height);
             leaf <= record.node.LastLeaf(height); ++leaf) {
          ++participation[static_cast<std::size_t>(leaf)];
        }
      }
      total_releases += static_cast<std::int64_t>(records.size());
    }
    ASSERT_EQ(total_releases, 2 * n - 1);
    const ReleaseRecord bridge = tree.ContainerEnd();
    ASSERT_TRUE(bridge.is_shadow);
    for (std::int64_t leaf = n / 2 + 1; leaf <= n; ++leaf) {
      ++participation[static_cast<std::size_t>(leaf)];
    }
    for (std::int64_t t = 1; t <= n; ++t) {
      const int expected =
          static_cast<int>(t <= n / 2 ? height + 1 : height + 2);
      ASSERT_EQ(participation[static_cast<std::size_t>(t)], expected)
          << "n=" << n << " leaf " << t;
    }
  }
}

// Criterion 4: feed all-zero streams through a noisy tree and check
// that the spread of the interval estimates matches the accounting.
// Short single-container intervals realize exactly their canonical
// decomposition's variance; boundary and long intervals go through the
// aligned half-block rule and must respect the coarse block bound.
constexpr double kVarianceRuntimeBudgetSeconds = 30.0;
constexpr double kVarianceRelativeTolerance = 0.05;
constexpr int kVarianceTrials = 10000;

TEST(Acceptance, Criterion04RealizedVarianceTracksBudget) {
  const Stopwatch timer;
  const NoiseSpec spec = NoiseSpec::Laplace(2.0);
  const double per_release = spec.Variance();
  struct Probe {
    std::int64_t first;
    std::int64_t last;
  };
  // All inside the first container, length at most N/2 = 4.
  const std::vector<Probe> canonical = {
      {2, 5}, {3, 3}, {1, 4}, {5, 8}, {6, 8},
  };
  // Boundary straddles and long intervals.
  const std::vector<Probe> blocks = {
      {7, 10}, {1, 8}, {5, 12}, {3, 14}, {1, 16},
  };
  std::vector<double> canonical_sq(canonical.size(), 0.0);
  std::vector<double> block_sq(blocks.size(), 0.0);
  std::vector<int> block_releases(blocks.size(), 0);
  for (std::uint64_t trial = 0; trial < kVarianceTrials; ++trial) {
    BinaryTree tree(8, spec, DeriveTrialSeed(2025, trial));
    ReleaseStore store(8);
    for (int c = 0; c < 2; ++c) {
      for (int t = 0; t < 8; ++t) store.IngestAll(tree.AddLeaf(0.0));
      store.Ingest(tree.ContainerEnd());
    }
    for (std::size_t p = 0; p < canonical.size(); ++p) {
      const IntervalEstimate est =
          store.EstimateInterval(canonical[p].first, canonical[p].last);
      if (trial == 0) {
        const std::size_t can_size =
            CanonicalDecompose(canonical[p].first, canonical[p].last, 8)
                .nodes.size();
        EXPECT_EQ(static_cast<std::size_t>(est.releases_used), can_size);
        EXPECT_NEAR(est.variance_bound,
                    static_cast<double>(can_size) * per_release, 1e-9);
      }
      canonical_sq[p] += est.estimate * est.estimate;
    }
    for (std::size_t p = 0; p < blocks.size(); ++p) {
      const IntervalEstimate est =
          store.EstimateInterval(blocks[p].first, blocks[p].last);
      if (trial == 0) {
        block_releases[p] = est.releases_used;
        EXPECT_NEAR(est.variance_bound, est.releases_used * per_release,
                    1e-9);
        const std::int64_t k = (blocks[p].last - blocks[p].first + 1) / 4;
        EXPECT_LE(est.variance_bound,
                  static_cast<double>(k + DecompositionBound(8)) *
                      per_release)
            << "[" << blocks[p].first << "," << blocks[p].last << "]";
      }
      block_sq[p] += est.estimate * est.estimate;
    }
  }
  for (std::size_t p = 0; p < canonical.size(); ++p) {
    const double empirical = canonical_sq[p] / kVarianceTrials;
    const double advertised =
        static_cast<double>(
            CanonicalDecompose(canonical[p].first, canonical[p].last, 8)
                .nodes.size()) *
        per_release;
    EXPECT_NEAR(empirical / advertised, 1.0, kVarianceRelativeTolerance)
        << "[" << canonical[p].first << "," << canonical[p].last << "]";
  }
  for (std::size_t p = 0; p < blocks.size(); ++p) {
    const double empirical = block_sq[p] / kVarianceTrials;
    const double realized = block_releases[p] * per_release;
    EXPECT_NEAR(empirical / realized, 1.0, kVarianceRelativeTolerance)
        << "[" << blocks[p].first << "," << blocks[p].last << "]";
    const std::int64_t k = (blocks[p].last - blocks[p].first + 1) / 4;
    EXPECT_LE(empirical,
              static_cast<double>(k + DecompositionBound(8)) * per_release);
  }
  EXPECT_LT(timer.ElapsedSeconds(), kVarianceRuntimeBudgetSeconds);
}

// Criterion 5: two registered queries, sixteen contexts, every message
// delivered twice in scrambled orders. The ledger total must equal the
// per-context filter value summed over distinct contexts, exactly.
TEST(Acceptance, Criterion05BroadcastAccountingExactAndReplaySafe) {
  QueryEngine engine("uptown", 3600, 225, 1.0, 7);

  // sigma = 4 * sqrt(2) makes epsilon exactly 0.25; 2 * sqrt(2) makes
  // it exactly 0.5. Both rho contributions are then exact in binary.
  QuerySpec fast;
  fast.label = "fast_count";
  fast.aggregate = Aggregate::kCount;
  fast.aw_duration = 225;
  fast.sigma_q = 4.0 * std::sqrt(2.0);
  QuerySpec slow;
  slow.label = "slow_count";
  slow.aggregate = Aggregate::kCount;
  slow.aw_duration = 900;
  slow.sigma_q = 2.0 * std::sqrt(2.0);
  const QueryHandle q_fast = engine.RegisterQuery(fast);
  const QueryHandle q_slow = engine.RegisterQuery(slow);

  EXPECT_EQ(engine.NqOf(q_fast), 16);
  EXPECT_EQ(engine.NqOf(q_slow), 4);
  EXPECT_EQ(engine.Epsilons(q_fast), (std::vector<double>{0.25}));
  EXPECT_EQ(engine.Epsilons(q_slow), (std::vector<double>{0.5}));
  const double rho = engine.ComputeNodeFilter();
  EXPECT_EQ(rho, 3.5);
  EXPECT_EQ(NodeFilter({{16, 0.25}, {4, 0.5}}), rho);

  std::vector<std::string> contexts;
  for (int g = 0; g < 16; ++g) {
    contexts.push_back("uptown/tc" + std::to_string(g));
  }
  std::vector<BroadcastMessage> messages;
  for (int w = 0; w < 16; ++w) {
    const QueryEngine::AwResult result =
        engine.OnAwRelease(q_fast, 1.0, {contexts[static_cast<std::size_t>(w)]});
    messages.insert(messages.end(), result.broadcasts.begin(),
                    result.broadcasts.end());
  }
  for (int w = 0; w < 4; ++w) {
    const std::vector<std::string> covered(
        contexts.begin() + 4 * w, contexts.begin() + 4 * (w + 1));
    const QueryEngine::AwResult result =
        engine.OnAwRelease(q_slow, 1.0, covered);
    messages.insert(messages.end(), result.broadcasts.begin(),
                    result.broadcasts.end());
  }
  ASSERT_EQ(messages.size(), 32u);
  for (const BroadcastMessage& message : messages) {
    ASSERT_EQ(message.rho_node, 3.5);
    ASSERT_EQ(message.locality, "uptown");
  }

  // Fifty scrambled double deliveries of all 32 messages.
  NoiseSampler shuffler(13);
  for (int round = 0; round < 50; ++round) {
    std::vector<BroadcastMessage> delivery = messages;
    delivery.insert(delivery.end(), messages.begin(), messages.end());
    for (std::size_t i = delivery.size(); i > 1; --i) {
      std::swap(delivery[i - 1],
                delivery[static_cast<std::size_t>(shuffler.UniformInt(i))]);
    }
    DeviceLedger ledger("device-1", std::numeric_limits<double>::infinity());
    for (const BroadcastMessage& message : delivery) {
      ledger.ReceiveBroadcast(message);
    }
    ASSERT_EQ(ledger.epsilon_acc(), 16 * 3.5);
    ASSERT_EQ(ledger.seen_context_count(), 16);
  }

  // Exhaustive over every ordering of a small duplicated multiset.
  // messages[0..3] carry tc0..tc3; four distinct contexts total.
  std::vector<int> order = {0, 0, 1, 2, 3, 3};
  int orderings = 0;
  do {
    DeviceLedger ledger("device-2", std::numeric_limits<double>::infinity());
    for (const int index : order) {
      ledger.ReceiveBroadcast(messages[static_cast<std::size_t>(index)]);
    }
    ASSERT_EQ(ledger.epsilon_acc(), 4 * 3.5);
    ASSERT_EQ(ledger.seen_context_count(), 4);
    ++orderings;
  } while (std::next_permutation(order.begin(), order.end()));
  EXPECT_EQ(orderings, 180);
}

// Criterion 6: the counting sweep at full trial count. The sensitivity
// gap between the untrusted and trusted variants is 100/9, the epsilon
// drop from 1 to 0.1 scales error tenfold, and longer windows always
// help. Ratios carry a 10 percent band.
constexpr double kCountRuntimeBudgetSeconds = 60.0;
constexpr std::int64_t kCountTrials = 1000;
constexpr double kRatioRelativeTolerance = 0.10;

TEST(Acceptance, Criterion06CountingAccuracyTrends) {
  const Stopwatch timer;
  const CountAccuracyParams params;
  const std::vector<CountAccuracyRow> rows =
      CountAccuracySweep(params, 1, kCountTrials);
  std::map<std::string, std::map<int, double>> rmsre;
  for (const CountAccuracyRow& row : rows) {
    rmsre[row.config][row.window_hours] = row.rmsre;
  }
  const std::map<int, double>& trusted = rmsre.at("trusted_eps1");
  const std::map<int, double>& tenth = rmsre.at("trusted_eps0.1");
  const std::map<int, double>& untrusted = rmsre.at("untrusted_eps1");
  for (int w = 1; w <= 12; ++w) {
    const double sensitivity_ratio = untrusted.at(w) / trusted.at(w);
    EXPECT_NEAR(sensitivity_ratio / (100.0 / 9.0), 1.0,
                kRatioRelativeTolerance)
        << "window " << w;
    const double epsilon_ratio = tenth.at(w) / trusted.at(w);
    EXPECT_NEAR(epsilon_ratio / 10.0, 1.0, kRatioRelativeTolerance)
        << "window " << w;
  }
  for (const auto& [config, by_window] : rmsre) {
    for (int w = 1; w < 12; ++w) {
      EXPECT_GT(by_window.at(w), by_window.at(w + 1))
          << config << " window " << w;
    }
  }
  EXPECT_LT(timer.ElapsedSeconds(), kCountRuntimeBudgetSeconds);
}

// Criterion 7: the station-flow sweep bottoms out at the analytic
// noise floor once budgets stop binding, and budget relief never makes
// the estimate worse thanks to paired noise draws.
constexpr std::int64_t kSubwayTrials = 3;
constexpr double kNoiseFloorTarget = 0.0025;
constexpr double kMeanWeeklyBinTarget = 1140.0;

TEST(Acceptance, Criterion07SubwayNoiseFloorAndBudgetScaling) {
  const SubwayOdParams params = SubwayOdParams::Defaults();
  const std::vector<SubwayOdRow> rows = SubwayOdSweep(params, 1, kSubwayTrials);
  std::map<double, std::map<BatchGranularity, double>> rmsre;
  for (const SubwayOdRow& row : rows) {
    rmsre[row.epsilon][row.batch] = row.rmsre;
  }

  // The configured population really does carry roughly 1140 riders
  // per active station pair per week.
  const std::vector<Trip> trips =
      GenerateTrips(params.population, params.weeks, DeriveTrialSeed(1, 0));
  const std::vector<OdHistogram> weekly = BuildTruthHistograms(
      trips, params.population.station_count, BatchGranularity::kWeek,
      params.weeks);
  double total = 0.0;
  std::int64_t active = 0;
  for (const OdHistogram& hist : weekly) {
    for (const double count : hist.bins) {
      if (count > 0.0) {
        total += count;
        ++active;
      }
    }
  }
  const double mean_bin = total / static_cast<double>(active);
  EXPECT_NEAR(mean_bin / kMeanWeeklyBinTarget, 1.0, kRatioRelativeTolerance);

  const double inf = std::numeric_limits<double>::infinity();
  const double floor_rmsre = rmsre.at(inf).at(BatchGranularity::kWeek);
  EXPECT_NEAR(floor_rmsre / kNoiseFloorTarget, 1.0, kRatioRelativeTolerance);

  for (const BatchGranularity batch :
       {BatchGranularity::kHour, BatchGranularity::kDay,
        BatchGranularity::kWeek}) {
    for (std::size_t e = 0; e + 1 < params.epsilons.size(); ++e) {
      EXPECT_GE(rmsre.at(params.epsilons[e]).at(batch),
                rmsre.at(params.epsilons[e + 1]).at(batch))
          << "epsilon step " << params.epsilons[e] << " -> "
          << params.epsilons[e + 1] << " batch "
          << BatchName(batch);
    }
  }
  EXPECT_LE(rmsre.at(5.0).at(BatchGranularity::kWeek),
            0.15 * rmsre.at(1.0).at(BatchGranularity::kWeek));
}

// Criterion 8: the exit-observation sweep. Full coverage lands on the
// analytic noise floor bit for bit, guessing never beats not guessing,
// and better coverage never hurts.
TEST(Acceptance, Criterion08ExitObservationSweep) {
  const SelfIdParams params = SelfIdParams::Defaults();
  const std::vector<SelfIdPoint> points = SelfIdUtilitySweep(params, 1);

  // Rebuild the truth exactly the way the sweep builds it.
  const std::vector<Trip> trips =
      GenerateTrips(params.population, params.weeks, DeriveTrialSeed(1, 0));
  const std::vector<OdHistogram> truth = BuildTruthHistograms(
      trips, params.population.station_count, BatchGranularity::kWeek,
      params.weeks);
  const double floor_rmsre = AnalyticNoiseFloor(truth, params.laplace_b);

  std::map<double, std::map<double, double>> rmsre;
  for (const SelfIdPoint& point : points) {
    rmsre[point.a][point.p] = point.rmsre;
  }
  for (const double p : params.p_grid) {
    EXPECT_EQ(rmsre.at(1.0).at(p), floor_rmsre);
  }
  for (const double a : params.a_grid) {
    if (a < 1.0) {
      EXPECT_GE(rmsre.at(a).at(1.0), rmsre.at(a).at(0.0)) << "a=" << a;
    }
    for (const double p : params.p_grid) {
      EXPECT_GE(rmsre.at(a).at(p), floor_rmsre);
    }
  }
  for (const double p : params.p_grid) {
    for (std::size_t i = 0; i + 1 < params.a_grid.size(); ++i) {
      EXPECT_GE(rmsre.at(params.a_grid[i]).at(p),
                rmsre.at(params.a_grid[i + 1]).at(p))
          << "p=" << p << " a step " << params.a_grid[i];
    }
  }
}

// Criterion 9: the buffer-sniffing sweep. A static listener is blind
// to the wipe period, mobile attackers only gain from longer
// retention, faster attackers always capture more, and a car gets
// roughly an order of magnitude more from 300 s buffers than from
// 30 s ones.
constexpr double kSniffRuntimeBudgetSeconds = 60.0;

TEST(Acceptance, Criterion09SniffingCaptureOrderAndScaling) {
  const Stopwatch timer;
  const SniffParams params;
  const std::vector<SniffRow> rows = SniffSweep(params, 1);
  std::map<std::string, std::map<Seconds, double>> fraction;
  for (const SniffRow& row : rows) {
    fraction[row.profile][row.max_ec] = row.capture_fraction;
  }
  ASSERT_EQ(fraction.size(), 4u);

  const double static_base = fraction.at("static").at(params.max_ec_sweep[0]);
  for (const Seconds max_ec : params.max_ec_sweep) {
    EXPECT_EQ(fraction.at("static").at(max_ec), static_base);
  }
  for (const std::string profile : {"pedestrian", "cyclist", "car"}) {
    const std::map<Seconds, double>& by_period = fraction.at(profile);
    for (std::size_t i = 0; i + 1 < params.max_ec_sweep.size(); ++i) {
      EXPECT_LE(by_period.at(params.max_ec_sweep[i]),
                by_period.at(params.max_ec_sweep[i + 1]))
          << profile << " at " << params.max_ec_sweep[i] << "s";
    }
  }
  for (const Seconds max_ec : params.max_ec_sweep) {
    EXPECT_LE(fraction.at("pedestrian").at(max_ec),
              fraction.at("cyclist").at(max_ec))
        << max_ec << "s";
    EXPECT_LE(fraction.at("cyclist").at(max_ec), fraction.at("car").at(max_ec))
        << max_ec << "s";
  }
  const double car_ratio =
      fraction.at("car").at(300) / fraction.at("car").at(30);
  EXPECT_GE(car_ratio, 5.0);
  EXPECT_LE(car_ratio, 15.0);
  EXPECT_LT(timer.ElapsedSeconds(), kSniffRuntimeBudgetSeconds);
}

// Criterion 10: rotation honors its window bounds under randomized
// configurations, reads die with their producer, and the tumbling
// special case partitions the frame axis exactly.
TEST(Acceptance, Criterion10RotationWindowsAndOutputLifetime) {
  const std::vector<RotationPropsRow> rows = RotationPropsSweep(10, 20, 10000);
  ASSERT_EQ(rows.size(), 20u);
  for (const RotationPropsRow& row : rows) {
    EXPECT_EQ(row.violations, 0) << "run " << row.run;
    EXPECT_GE(row.min_window, row.min_ec) << "run " << row.run;
    EXPECT_LE(row.max_window, row.max_ec) << "run " << row.run;
    EXPECT_LE(row.max_live, 2) << "run " << row.run;
    EXPECT_EQ(row.steps, 10000);
  }

  // Direct witness on one slot: size bounds, frame freshness, and the
  // two-instance ceiling, checked on every frame.
  ContainerConfig config;
  config.min_ec = 3;
  config.max_ec = 12;
  ContainerSlot slot(config, RotationLimits{}, "gate");
  for (int i = 0; i < 2000; ++i) {
    slot.AdvanceFrame();
    ASSERT_LE(slot.LiveInstanceCount(), 2);
    const VisibleWindow window = slot.Window();
    if (window.warming) continue;
    ASSERT_GE(window.frames.size(), 3u);
    ASSERT_LE(window.frames.size(), 12u);
    ASSERT_GE(window.frames.front(), window.frames.back() - 12 + 1);
  }

  // An emitted output must become unreadable once the instance that
  // produced it is torn down.
  ContainerConfig out_config;
  out_config.min_ec = 2;
  out_config.max_ec = 10;
  ContainerSlot out_slot(out_config, RotationLimits{}, "gate");
  for (int i = 0; i < 5; ++i) out_slot.AdvanceFrame();
  const OutputHandle handle = out_slot.EmitOutput("estimate");
  ASSERT_TRUE(out_slot.ReadOutput(handle).has_value());
  for (int i = 0; i < 6; ++i) out_slot.AdvanceFrame();
  EXPECT_EQ(out_slot.ReadOutput(handle), std::nullopt);
  EXPECT_TRUE(out_slot.Output(handle).evicted);

  // minEC = 0 tumbles: windows tile the frame axis back to back and
  // exactly one instance is ever alive.
  ContainerConfig tumbling;
  tumbling.min_ec = 0;
  tumbling.max_ec = 6;
  ContainerSlot tumbler(tumbling, RotationLimits{}, "gate");
  std::int64_t next_start = 0;
  for (int i = 0; i < 600; ++i) {
    tumbler.AdvanceFrame();
    const VisibleWindow window = tumbler.Window();
    ASSERT_FALSE(window.warming);
    ASSERT_EQ(window.frames.front(), next_start);
    ASSERT_EQ(window.frames.back(), i);
    ASSERT_LE(window.frames.size(), 6u);
    if (window.frames.size() == 6u) next_start += 6;
    ASSERT_EQ(tumbler.LiveInstanceCount(), 1);
  }
  int teardowns = 0;
  for (const RotationEvent& event : tumbler.event_log()) {
    if (event.kind == RotationEventKind::kTornDown) {
      EXPECT_EQ(event.frame_index % 6, 0);
      ++teardowns;
    }
  }
  EXPECT_EQ(teardowns, 99);
}

const std::map<int, std::string>& CriterionLabels() {
  static const std::map<int, std::string> labels = {
      {1, "zero noise interval estimates match brute force sums"},
      {2, "canonical decompositions tile and stay within bounds"},
      {3, "per leaf release participation matches the depth rule"},
      {4, "realized interval variance tracks the advertised budget"},
      {5, "broadcast accounting is exact and replay safe"},
      {6, "counting accuracy ratios and trends hold at full trials"},
      {7, "station flow error reaches the analytic noise floor"},
      {8, "exit observation sweep collapses to the floor at a = 1"},
      {9, "capture obeys speed order and retention scaling"},
      {10, "rotation windows stay bounded and outputs die with producers"},
  };
  return labels;
}

// Prints one verdict line per criterion after its test finishes, pass
// or fail, so the checklist is complete even on a red run.
class ChecklistPrinter : public ::testing::EmptyTestEventListener {
  void OnTestEnd(const ::testing::TestInfo& info) override {
    const std::string name = info.name();
    constexpr const char kPrefix[] = "Criterion";
    if (name.rfind(kPrefix, 0) != 0) return;
    const int number = std::stoi(name.substr(sizeof(kPrefix) - 1, 2));
    const bool passed = info.result()->Passed();
    std::printf("[ACCEPTANCE] criterion %d: %s (%s)\n", number,
                passed ? "PASS" : "FAIL", CriterionLabels().at(number).c_str());
    std::fflush(stdout);
  }
};

}  // namespace
}  // namespace edgedp

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(
      new edgedp::ChecklistPrinter);
  return RUN_ALL_TESTS();
}
