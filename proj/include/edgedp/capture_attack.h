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
// Buffer-scraping attack on a grid city. Every intersection runs an
// output buffer that is wiped on a synchronized schedule with period
// max_ec. An attacker moving through the city reads each buffer it
// reaches and keeps whatever accumulated since the later of the last
// wipe and its own previous read there. The metric is the fraction of
// city-wide person-activity the attacker walks away with in an hour.

#ifndef EDGEDP_CAPTURE_ATTACK_H_
#define EDGEDP_CAPTURE_ATTACK_H_

#include <cstdint>
#include <set>
#include <vector>

#include "edgedp/core_model.h"

namespace edgedp {

struct CityGrid {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  double block_length = 0.0;

  std::int64_t NodeCount() const { return rows * cols; }
  std::int64_t RowOf(std::int64_t node) const { return node / cols; }
  std::int64_t ColOf(std::int64_t node) const { return node % cols; }
  std::int64_t NodeAt(std::int64_t row, std::int64_t col) const {
    return row * cols + col;
  }
  std::int64_t ManhattanBlocks(std::int64_t a, std::int64_t b) const;

  // 18 x 30 intersections (540 total) with 123 m blocks, roughly a
  // dense downtown extract.
  static CityGrid Midtown();
};

// Time-constant, spatially heterogeneous activity. Each intersection
// carries a fixed share of the city's person-seconds, concentrated
// around a single hub with seeded per-node jitter.
struct TrafficModel {
  double intensity = 0.0;
  Seconds duration = 0;
  std::int64_t hub = 0;
  // Per-intersection share of total activity; sums to 1.
  std::vector<double> weights;

  double PresenceRate(std::int64_t node) const {
    return intensity * weights[node];
  }
  double TotalPersonSeconds() const {
    return intensity * static_cast<double>(duration);
  }
};

TrafficModel GenerateTraffic(const CityGrid& grid, double intensity,
                             std::uint64_t seed, Seconds duration);

enum class AttackerKind {
  kPedestrian,
  kCyclist,
  kCar,
  kStatic,
};

const char* AttackerName(AttackerKind kind);

struct AttackerProfile {
  AttackerKind kind = AttackerKind::kStatic;
  double speed = 0.0;
  std::int64_t start = 0;

  // Speeds 1.3 / 5.4 / 13.4 m/s for pedestrian, cyclist, car; zero for
  // static. Everyone starts at the traffic hub.
  static AttackerProfile Default(AttackerKind kind, const CityGrid& grid);
};

struct Visit {
  std::int64_t node = 0;
  double time = 0.0;
};

// Walks edge by edge toward the nearest not-yet-visited intersection,
// restarting the target choice whenever the current target has been
// reached or swept up in passing. Every arrival is a visit, so the
// itinerary's time deltas are exactly block_length / speed. A static
// profile yields the single visit (start, 0).
std::vector<Visit> GreedyRoute(const CityGrid& grid,
                               const AttackerProfile& profile,
                               Seconds duration);

struct CaptureLog {
  double captured_person_seconds = 0.0;
  double total_person_seconds = 0.0;
  std::set<std::int64_t> visited;

  double Fraction() const {
    return total_person_seconds > 0.0
               ? captured_person_seconds / total_person_seconds
               : 0.0;
  }
};

// Replays a mobile itinerary against the buffer schedule. At a visit to
// node v at time t the attacker gains v's activity over the interval
// (max(window_start(t), last_read_v), t], where window_start(t) is the
// most recent multiple of max_ec. Static attackers read continuously
// and their haul does not depend on max_ec at all.
CaptureLog RunAttack(const CityGrid& grid, const TrafficModel& traffic,
                     const AttackerProfile& profile, Seconds max_ec);

// Same, but against a precomputed itinerary so a max_ec sweep reuses
// one route.
CaptureLog ReplayAttack(const CityGrid& grid, const TrafficModel& traffic,
                        const AttackerProfile& profile,
                        const std::vector<Visit>& route, Seconds max_ec);

}  // namespace edgedp

#endif  // EDGEDP_CAPTURE_ATTACK_H_
