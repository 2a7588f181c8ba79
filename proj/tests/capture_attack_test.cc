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

#include "edgedp/capture_attack.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace edgedp {
namespace {

AttackerProfile MobileProfile(double speed, std::int64_t start) {
  AttackerProfile profile;
  profile.kind = AttackerKind::kCar;
  profile.speed = speed;
  profile.start = start;
  return profile;
}

TrafficModel HandTraffic(double intensity, Seconds duration,
                         std::vector<double> weights) {
  TrafficModel traffic;
  traffic.intensity = intensity;
  traffic.duration = duration;
  traffic.hub = 0;
  traffic.weights = std::move(weights);
  return traffic;
}

TEST(CityGridTest, MidtownGeometry) {
  const CityGrid grid = CityGrid::Midtown();
  EXPECT_EQ(grid.rows, 18);
  EXPECT_EQ(grid.cols, 30);
  EXPECT_DOUBLE_EQ(grid.block_length, 123.0);
  EXPECT_EQ(grid.NodeCount(), 540);
}

TEST(CityGridTest, NodeCoordinateRoundTrip) {
  const CityGrid grid{4, 7, 100.0};
  for (std::int64_t row = 0; row < 4; ++row) {
    for (std::int64_t col = 0; col < 7; ++col) {
      const std::int64_t node = grid.NodeAt(row, col);
      EXPECT_EQ(grid.RowOf(node), row);
      EXPECT_EQ(grid.ColOf(node), col);
    }
  }
}

TEST(CityGridTest, ManhattanBlocks) {
  const CityGrid grid{4, 7, 100.0};
  const std::int64_t a = grid.NodeAt(0, 0);
  const std::int64_t b = grid.NodeAt(2, 3);
  EXPECT_EQ(grid.ManhattanBlocks(a, b), 5);
  EXPECT_EQ(grid.ManhattanBlocks(b, a), 5);
  EXPECT_EQ(grid.ManhattanBlocks(a, a), 0);
}

TEST(TrafficTest, WeightsFormADistribution) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 2.5, 7, 3600);
  ASSERT_EQ(traffic.weights.size(), 540u);
  EXPECT_EQ(traffic.hub, grid.NodeAt(9, 15));
  EXPECT_EQ(traffic.duration, 3600);

  double sum = 0.0;
  for (double w : traffic.weights) {
    EXPECT_GT(w, 0.0);
    sum += w;
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(traffic.TotalPersonSeconds(), 2.5 * 3600.0);
}

TEST(TrafficTest, ActivityConcentratesNearTheHub) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 1.0, 7, 3600);

  double near_sum = 0.0;
  std::int64_t near_count = 0;
  double far_sum = 0.0;
  std::int64_t far_count = 0;
  for (std::int64_t node = 0; node < grid.NodeCount(); ++node) {
    const std::int64_t dist = grid.ManhattanBlocks(node, traffic.hub);
    if (dist <= 2) {
      near_sum += traffic.weights[node];
      ++near_count;
    } else if (dist >= 20) {
      far_sum += traffic.weights[node];
      ++far_count;
    }
  }
  ASSERT_GT(near_count, 0);
  ASSERT_GT(far_count, 0);
  EXPECT_GT(near_sum / near_count, 2.0 * far_sum / far_count);
}

TEST(TrafficTest, ZeroIntensityMeansZeroActivityEverywhere) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 0.0, 7, 3600);
  EXPECT_DOUBLE_EQ(traffic.TotalPersonSeconds(), 0.0);
  for (std::int64_t node = 0; node < grid.NodeCount(); ++node) {
    EXPECT_DOUBLE_EQ(traffic.PresenceRate(node), 0.0);
  }

  for (const AttackerKind kind :
       {AttackerKind::kPedestrian, AttackerKind::kStatic}) {
    const CaptureLog log = RunAttack(
        grid, traffic, AttackerProfile::Default(kind, grid), 300);
    EXPECT_DOUBLE_EQ(log.captured_person_seconds, 0.0);
    EXPECT_DOUBLE_EQ(log.Fraction(), 0.0);
  }
}

TEST(TrafficTest, DeterministicForFixedSeed) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel a = GenerateTraffic(grid, 1.0, 7, 3600);
  const TrafficModel b = GenerateTraffic(grid, 1.0, 7, 3600);
  EXPECT_EQ(a.weights, b.weights);

  const TrafficModel c = GenerateTraffic(grid, 1.0, 8, 3600);
  EXPECT_NE(a.weights, c.weights);
}

TEST(TrafficTest, RejectsBadArguments) {
  const CityGrid grid = CityGrid::Midtown();
  EXPECT_THROW(GenerateTraffic(grid, -0.1, 7, 3600), std::invalid_argument);
  EXPECT_THROW(GenerateTraffic(CityGrid{0, 30, 123.0}, 1.0, 7, 3600),
               std::invalid_argument);
  EXPECT_THROW(GenerateTraffic(grid, 1.0, 7, 0), std::invalid_argument);
}

TEST(AttackerProfileTest, DefaultsStartAtTheHubWithKnownSpeeds) {
  const CityGrid grid = CityGrid::Midtown();
  const std::int64_t hub = grid.NodeAt(9, 15);

  const AttackerProfile ped =
      AttackerProfile::Default(AttackerKind::kPedestrian, grid);
  EXPECT_DOUBLE_EQ(ped.speed, 1.3);
  EXPECT_EQ(ped.start, hub);

  EXPECT_DOUBLE_EQ(
      AttackerProfile::Default(AttackerKind::kCyclist, grid).speed, 5.4);
  EXPECT_DOUBLE_EQ(AttackerProfile::Default(AttackerKind::kCar, grid).speed,
                   13.4);
  EXPECT_DOUBLE_EQ(
      AttackerProfile::Default(AttackerKind::kStatic, grid).speed, 0.0);

  EXPECT_STREQ(AttackerName(AttackerKind::kPedestrian), "pedestrian");
  EXPECT_STREQ(AttackerName(AttackerKind::kCyclist), "cyclist");
  EXPECT_STREQ(AttackerName(AttackerKind::kCar), "car");
  EXPECT_STREQ(AttackerName(AttackerKind::kStatic), "static");
}

TEST(GreedyRouteTest, StaticProfileSitsStill) {
  const CityGrid grid = CityGrid::Midtown();
  const std::vector<Visit> route = GreedyRoute(
      grid, AttackerProfile::Default(AttackerKind::kStatic, grid), 3600);
  ASSERT_EQ(route.size(), 1u);
  EXPECT_EQ(route[0].node, grid.NodeAt(9, 15));
  EXPECT_DOUBLE_EQ(route[0].time, 0.0);
}

// At 1.3 / 5.4 / 13.4 m/s across 123 m blocks an hour holds 38, 158 and
// 392 edge traversals, so the itineraries carry one more visit than that.
TEST(GreedyRouteTest, HourlyVisitCountsPerSpeed) {
  const CityGrid grid = CityGrid::Midtown();
  EXPECT_EQ(GreedyRoute(grid,
                        AttackerProfile::Default(AttackerKind::kPedestrian,
                                                 grid),
                        3600)
                .size(),
            39u);
  EXPECT_EQ(GreedyRoute(grid,
                        AttackerProfile::Default(AttackerKind::kCyclist, grid),
                        3600)
                .size(),
            159u);
  EXPECT_EQ(
      GreedyRoute(grid, AttackerProfile::Default(AttackerKind::kCar, grid),
                  3600)
          .size(),
      393u);
}

TEST(GreedyRouteTest, MovesOneBlockPerStepOnTheClock) {
  const CityGrid grid = CityGrid::Midtown();
  const AttackerProfile car =
      AttackerProfile::Default(AttackerKind::kCar, grid);
  const std::vector<Visit> route = GreedyRoute(grid, car, 3600);
  ASSERT_GT(route.size(), 1u);

  const double edge_time = grid.block_length / car.speed;
  double expected_time = 0.0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    EXPECT_GE(route[i].node, 0);
    EXPECT_LT(route[i].node, grid.NodeCount());
    EXPECT_DOUBLE_EQ(route[i].time, expected_time);
    expected_time += edge_time;
    if (i == 0) continue;
    EXPECT_EQ(grid.ManhattanBlocks(route[i - 1].node, route[i].node), 1);
  }
}

TEST(GreedyRouteTest, KeepsMovingAfterCoveringTheGrid) {
  const CityGrid grid{2, 2, 1.0};
  const std::vector<Visit> route = GreedyRoute(grid, MobileProfile(1.0, 0), 10);
  ASSERT_EQ(route.size(), 11u);

  std::set<std::int64_t> seen;
  for (const Visit& visit : route) {
    seen.insert(visit.node);
  }
  EXPECT_EQ(seen.size(), 4u);
  for (std::size_t i = 1; i < route.size(); ++i) {
    EXPECT_GT(route[i].time, route[i - 1].time);
    EXPECT_EQ(grid.ManhattanBlocks(route[i - 1].node, route[i].node), 1);
  }
}

TEST(GreedyRouteTest, RejectsBadProfiles) {
  const CityGrid grid = CityGrid::Midtown();
  EXPECT_THROW(GreedyRoute(grid, MobileProfile(13.4, -1), 3600),
               std::invalid_argument);
  EXPECT_THROW(GreedyRoute(grid, MobileProfile(13.4, 540), 3600),
               std::invalid_argument);
  EXPECT_THROW(GreedyRoute(grid, MobileProfile(0.0, 0), 3600),
               std::invalid_argument);
}

// Three stations in a row, one read per 10 s hop. The greedy tour is
// 0, 1, 2, 1, 0 at times 0..40, which makes the haul easy to tally by
// hand for any wipe period.
class LineAttackTest : public ::testing::Test {
 protected:
  LineAttackTest()
      : grid_{1, 3, 10.0},
        traffic_(HandTraffic(1.0, 40, {0.5, 0.3, 0.2})),
        profile_(MobileProfile(1.0, 0)) {}

  CityGrid grid_;
  TrafficModel traffic_;
  AttackerProfile profile_;
};

TEST_F(LineAttackTest, GreedyTourSweepsOutAndBack) {
  const std::vector<Visit> route = GreedyRoute(grid_, profile_, 40);
  ASSERT_EQ(route.size(), 5u);
  const std::vector<std::int64_t> nodes = {0, 1, 2, 1, 0};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    EXPECT_EQ(route[i].node, nodes[i]);
    EXPECT_DOUBLE_EQ(route[i].time, 10.0 * static_cast<double>(i));
  }
}

TEST_F(LineAttackTest, CaptureWithMidRunWipe) {
  // Wipes at t = 25 cut the reads at t = 30 and t = 40 down to 5 s and
  // 15 s of history: 0.3*10 + 0.2*20 + 0.3*5 + 0.5*15 = 16.
  const CaptureLog log = RunAttack(grid_, traffic_, profile_, 25);
  EXPECT_NEAR(log.captured_person_seconds, 16.0, 1e-9);
  EXPECT_DOUBLE_EQ(log.total_person_seconds, 40.0);
  EXPECT_NEAR(log.Fraction(), 0.4, 1e-9);
  EXPECT_EQ(log.visited, (std::set<std::int64_t>{0, 1, 2}));
}

TEST_F(LineAttackTest, CaptureWithoutAnyWipe) {
  // A period past the horizon leaves every buffer intact, so only the
  // attacker's own earlier reads limit the haul:
  // 0.3*10 + 0.2*20 + 0.3*20 + 0.5*40 = 33.
  const CaptureLog log = RunAttack(grid_, traffic_, profile_, 100);
  EXPECT_NEAR(log.captured_person_seconds, 33.0, 1e-9);
  EXPECT_NEAR(log.Fraction(), 0.825, 1e-9);
}

TEST_F(LineAttackTest, ReadAtTheWipeInstantGainsNothing) {
  const std::vector<Visit> route = {Visit{0, 25.0}};
  const CaptureLog log = ReplayAttack(grid_, traffic_, profile_, route, 25);
  EXPECT_DOUBLE_EQ(log.captured_person_seconds, 0.0);

  const std::vector<Visit> just_before = {Visit{0, 24.0}};
  const CaptureLog gain =
      ReplayAttack(grid_, traffic_, profile_, just_before, 25);
  EXPECT_NEAR(gain.captured_person_seconds, 12.0, 1e-9);
}

TEST_F(LineAttackTest, RepeatReadsOnlyAddTheIncrement) {
  const std::vector<Visit> route = {Visit{0, 10.0}, Visit{0, 15.0}};
  const CaptureLog log = ReplayAttack(grid_, traffic_, profile_, route, 100);
  EXPECT_NEAR(log.captured_person_seconds, 0.5 * 10.0 + 0.5 * 5.0, 1e-9);
}

TEST(ReplayAttackTest, RunAttackMatchesReplayOnTheSameRoute) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 1.0, 7, 3600);
  const AttackerProfile cyclist =
      AttackerProfile::Default(AttackerKind::kCyclist, grid);
  const std::vector<Visit> route = GreedyRoute(grid, cyclist, 3600);

  const CaptureLog direct = RunAttack(grid, traffic, cyclist, 300);
  const CaptureLog replayed = ReplayAttack(grid, traffic, cyclist, route, 300);
  EXPECT_DOUBLE_EQ(direct.captured_person_seconds,
                   replayed.captured_person_seconds);
  EXPECT_EQ(direct.visited, replayed.visited);
}

TEST(ReplayAttackTest, StaticHaulIgnoresTheWipePeriod) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 3.0, 7, 3600);
  const AttackerProfile still =
      AttackerProfile::Default(AttackerKind::kStatic, grid);

  const CaptureLog fast = RunAttack(grid, traffic, still, 30);
  const CaptureLog slow = RunAttack(grid, traffic, still, 86400);
  EXPECT_DOUBLE_EQ(fast.captured_person_seconds, slow.captured_person_seconds);
  EXPECT_DOUBLE_EQ(fast.Fraction(), traffic.weights[still.start]);
  EXPECT_EQ(fast.visited, (std::set<std::int64_t>{still.start}));
}

// Nested wipe periods can only widen every read window, so the haul is
// monotone along 30 | 300 | 3600.
TEST(ReplayAttackTest, LongerNestedPeriodsCaptureMore) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 1.0, 7, 3600);
  const AttackerProfile car =
      AttackerProfile::Default(AttackerKind::kCar, grid);
  const std::vector<Visit> route = GreedyRoute(grid, car, 3600);

  const double at30 =
      ReplayAttack(grid, traffic, car, route, 30).captured_person_seconds;
  const double at300 =
      ReplayAttack(grid, traffic, car, route, 300).captured_person_seconds;
  const double at3600 =
      ReplayAttack(grid, traffic, car, route, 3600).captured_person_seconds;
  EXPECT_LT(at30, at300);
  EXPECT_LT(at300, at3600);
}

TEST(ReplayAttackTest, FasterMobileAttackersCaptureMore) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 1.0, 1, 3600);

  double fractions[3];
  const AttackerKind kinds[] = {AttackerKind::kPedestrian,
                                AttackerKind::kCyclist, AttackerKind::kCar};
  for (int i = 0; i < 3; ++i) {
    fractions[i] =
        RunAttack(grid, traffic, AttackerProfile::Default(kinds[i], grid), 300)
            .Fraction();
  }
  EXPECT_GT(fractions[1], fractions[0]);
  EXPECT_GT(fractions[2], fractions[1]);
}

// With no wipe inside the horizon even a walking attacker reads full
// buffer histories at dozens of intersections, while a static one only
// ever sees its own corner.
TEST(ReplayAttackTest, MobileBeatsStaticWhenBuffersNeverWipe) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 1.0, 1, 3600);

  const double walking =
      RunAttack(grid, traffic,
                AttackerProfile::Default(AttackerKind::kPedestrian, grid),
                3600)
          .Fraction();
  const double still =
      RunAttack(grid, traffic,
                AttackerProfile::Default(AttackerKind::kStatic, grid), 3600)
          .Fraction();
  EXPECT_GT(walking, still);
}

TEST(ReplayAttackTest, RejectsBadArguments) {
  const CityGrid grid = CityGrid::Midtown();
  const TrafficModel traffic = GenerateTraffic(grid, 1.0, 7, 3600);
  const AttackerProfile car =
      AttackerProfile::Default(AttackerKind::kCar, grid);
  EXPECT_THROW(RunAttack(grid, traffic, car, 0), std::invalid_argument);
  EXPECT_THROW(RunAttack(grid, traffic, car, -5), std::invalid_argument);

  TrafficModel mismatched = traffic;
  mismatched.weights.resize(10);
  EXPECT_THROW(RunAttack(grid, mismatched, car, 300), std::invalid_argument);
}

TEST(CaptureLogTest, FractionGuardsZeroTotal) {
  CaptureLog log;
  log.captured_person_seconds = 0.0;
  log.total_person_seconds = 0.0;
  EXPECT_DOUBLE_EQ(log.Fraction(), 0.0);

  log.total_person_seconds = 50.0;
  log.captured_person_seconds = 20.0;
  EXPECT_DOUBLE_EQ(log.Fraction(), 0.4);
}

}  // namespace
}  // namespace edgedp
