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

#ifndef EDGEDP_CORE_MODEL_H_
#define EDGEDP_CORE_MODEL_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace edgedp {

// Time is integer seconds since the simulation epoch. There are no wall-clock
// or timezone semantics anywhere in the library.
using Seconds = std::int64_t;

struct Locality {
  std::string id;
  std::string label;
};

// A tracking context is the unit of identity scope: track ids live and die
// with one TC. All TCs share the deployment-wide duration tau_TC.
struct TrackingContext {
  std::string tc_id;
  std::string locality_id;
  Seconds start = 0;
  Seconds end = 0;
};

struct AggregationWindowSpec {
  Seconds aw_duration = 0;
  Seconds max_ec_sys = 0;
  // N = max_ec_sys / aw_duration, always a power of two >= 2.
  std::int64_t n = 0;

  int height() const;  // log2(n)
};

struct TrackedObject {
  std::int64_t track_id = 0;
  std::string object_type;
  double value = 0.0;  // clamped to [0, v_max] at construction time
};

using FrameDetections = std::vector<TrackedObject>;

// One aggregation window's worth of per-frame detection sets.
struct DetectionRecord {
  std::int64_t aw_index = 0;
  std::vector<FrameDetections> frames;
};

// Per-(locality, context) scalar contributions. Neighboring databases in the
// privacy analysis differ in exactly one record, so duplicates are rejected
// rather than merged.
class ContextDatabase {
 public:
  // Returns false (and leaves the database unchanged) on a duplicate key.
  bool Insert(const std::string& locality_id, const std::string& context_id,
              double y);
  bool Contains(const std::string& locality_id,
                const std::string& context_id) const;
  double Get(const std::string& locality_id,
             const std::string& context_id) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, double> records_;
};

// Splits [0, horizon) into consecutive TCs of length tau_tc at one locality.
// Context ids are "<locality>/tc<k>" with a per-locality monotone counter, so
// they are globally unique without coordination.
// Throws std::invalid_argument unless horizon is a positive multiple of
// tau_tc.
std::vector<TrackingContext> PartitionTimeline(Seconds tau_tc, Seconds horizon,
                                               const Locality& locality);

// Validates the dyadic window layout: aw_duration must be a positive multiple
// of tau_tc, and max_ec_sys / aw_duration must be a power of two >= 2.
// Throws std::invalid_argument otherwise.
AggregationWindowSpec ValidateAwSpec(Seconds aw_duration, Seconds max_ec_sys,
                                     Seconds tau_tc);

// Maps a TC to its aggregation window index within the container that starts
// at container_start.
std::int64_t AwIndexOf(const TrackingContext& tc, Seconds container_start,
                       Seconds aw_duration);

bool IsPowerOfTwo(std::int64_t v);

}  // namespace edgedp

#endif  // EDGEDP_CORE_MODEL_H_
