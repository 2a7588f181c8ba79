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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgedp/noise.h"

namespace edgedp {

std::int64_t CityGrid::ManhattanBlocks(std::int64_t a, std::int64_t b) const {
  return std::abs(RowOf(a) - RowOf(b)) + std::abs(ColOf(a) - ColOf(b));
}

CityGrid CityGrid::Midtown() { return CityGrid{18, 30, 123.0}; }

TrafficModel GenerateTraffic(const CityGrid& grid, double intensity,
                             std::uint64_t seed, Seconds duration) {
  if (!(intensity >= 0.0)) {
    throw std::invalid_argument("traffic intensity must be non-negative");
  }
  if (grid.rows < 1 || grid.cols < 1 || duration < 1) {
    throw std::invalid_argument("invalid grid or duration");
  }

  TrafficModel traffic;
  traffic.intensity = intensity;
  traffic.duration = duration;
  traffic.hub = grid.NodeAt(grid.rows / 2, grid.cols / 2);
  traffic.weights.resize(grid.NodeCount());

  NoiseSampler sampler(seed);
  double sum = 0.0;
  for (std::int64_t node = 0; node < grid.NodeCount(); ++node) {
    const double jitter = 0.25 + sampler.Uniform();
    const double radial =
        1.0 / (1.0 + static_cast<double>(
                         grid.ManhattanBlocks(node, traffic.hub)) /
                         4.0);
    traffic.weights[node] = jitter * radial;
    sum += traffic.weights[node];
  }
  for (double& w : traffic.weights) {
    w /= sum;
  }
  return traffic;
}

const char* AttackerName(AttackerKind kind) {
  switch (kind) {
    case AttackerKind::kPedestrian:
      return "pedestrian";
    case AttackerKind::kCyclist:
      return "cyclist";
    case AttackerKind::kCar:
      return "car";
    case AttackerKind::kStatic:
      return "static";
  }
  throw std::invalid_argument("unknown attacker kind");
}

AttackerProfile AttackerProfile::Default(AttackerKind kind,
                                         const CityGrid& grid) {
  AttackerProfile profile;
  profile.kind = kind;
  profile.start = grid.NodeAt(grid.rows / 2, grid.cols / 2);
  switch (kind) {
    case AttackerKind::kPedestrian:
      profile.speed = 1.3;
      break;
    case AttackerKind::kCyclist:
      profile.speed = 5.4;
      break;
    case AttackerKind::kCar:
      profile.speed = 13.4;
      break;
    case AttackerKind::kStatic:
      profile.speed = 0.0;
      break;
  }
  return profile;
}

namespace {

// Nearest unvisited node by travel time; ties break toward the smaller
// node id so routes are reproducible.
std::int64_t PickTarget(const CityGrid& grid,
                        const std::vector<bool>& visited,
                        std::int64_t from) {
  std::int64_t best = -1;
  std::int64_t best_dist = 0;
  for (std::int64_t node = 0; node < grid.NodeCount(); ++node) {
    if (visited[node]) continue;
    const std::int64_t dist = grid.ManhattanBlocks(from, node);
    if (best == -1 || dist < best_dist) {
      best = node;
      best_dist = dist;
    }
  }
  return best;
}

// One edge toward the target, shrinking the larger coordinate gap
// first. Row movement wins ties.
std::int64_t StepToward(const CityGrid& grid, std::int64_t from,
                        std::int64_t target) {
  const std::int64_t dr = grid.RowOf(target) - grid.RowOf(from);
  const std::int64_t dc = grid.ColOf(target) - grid.ColOf(from);
  if (std::abs(dr) >= std::abs(dc) && dr != 0) {
    return from + (dr > 0 ? grid.cols : -grid.cols);
  }
  return from + (dc > 0 ? 1 : -1);
}

}  // namespace

std::vector<Visit> GreedyRoute(const CityGrid& grid,
                               const AttackerProfile& profile,
                               Seconds duration) {
  if (profile.start < 0 || profile.start >= grid.NodeCount()) {
    throw std::invalid_argument("start intersection outside the grid");
  }
  if (profile.kind == AttackerKind::kStatic) {
    return {Visit{profile.start, 0.0}};
  }
  if (!(profile.speed > 0.0)) {
    throw std::invalid_argument("mobile profile needs a positive speed");
  }

  const double edge_time = grid.block_length / profile.speed;
  std::vector<bool> visited(grid.NodeCount(), false);
  std::vector<Visit> route;
  route.push_back(Visit{profile.start, 0.0});
  visited[profile.start] = true;

  std::int64_t current = profile.start;
  std::int64_t target = -1;
  double now = 0.0;
  while (true) {
    if (target == -1 || visited[target]) {
      target = PickTarget(grid, visited, current);
      if (target == -1) {
        // Everything has been seen once; start a fresh pass.
        std::fill(visited.begin(), visited.end(), false);
        visited[current] = true;
        target = PickTarget(grid, visited, current);
      }
    }
    now += edge_time;
    if (now > static_cast<double>(duration)) break;
    current = StepToward(grid, current, target);
    visited[current] = true;
    route.push_back(Visit{current, now});
  }
  return route;
}

CaptureLog ReplayAttack(const CityGrid& grid, const TrafficModel& traffic,
                        const AttackerProfile& profile,
                        const std::vector<Visit>& route, Seconds max_ec) {
  if (max_ec <= 0) {
    throw std::invalid_argument("max_ec must be positive");
  }
  if (static_cast<std::int64_t>(traffic.weights.size()) !=
      grid.NodeCount()) {
    throw std::invalid_argument("traffic does not match the grid");
  }

  CaptureLog log;
  log.total_person_seconds = traffic.TotalPersonSeconds();

  if (profile.kind == AttackerKind::kStatic) {
    const std::int64_t node = route.empty() ? profile.start : route[0].node;
    log.visited.insert(node);
    log.captured_person_seconds =
        traffic.PresenceRate(node) * static_cast<double>(traffic.duration);
    return log;
  }

  std::vector<double> last_read(grid.NodeCount(), 0.0);
  const double period = static_cast<double>(max_ec);
  for (const Visit& visit : route) {
    const double window_start = std::floor(visit.time / period) * period;
    const double from = std::max(window_start, last_read[visit.node]);
    if (visit.time > from) {
      log.captured_person_seconds +=
          traffic.PresenceRate(visit.node) * (visit.time - from);
    }
    last_read[visit.node] = visit.time;
    log.visited.insert(visit.node);
  }
  return log;
}

CaptureLog RunAttack(const CityGrid& grid, const TrafficModel& traffic,
                     const AttackerProfile& profile, Seconds max_ec) {
  return ReplayAttack(grid, traffic, profile,
                      GreedyRoute(grid, profile, traffic.duration), max_ec);
}

}  // namespace edgedp
