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

#include "edgedp/core_model.h"

#include <bit>
#include <stdexcept>

namespace edgedp {

bool IsPowerOfTwo(std::int64_t v) {
  return v > 0 && std::has_single_bit(static_cast<std::uint64_t>(v));
}

int AggregationWindowSpec::height() const {
  return std::bit_width(static_cast<std::uint64_t>(n)) - 1;
}

bool ContextDatabase::Insert(const std::string& locality_id,
                             const std::string& context_id, double y) {
  return records_.emplace(std::make_pair(locality_id, context_id), y).second;
}

bool ContextDatabase::Contains(const std::string& locality_id,
                               const std::string& context_id) const {
  return records_.count(std::make_pair(locality_id, context_id)) > 0;
}

double ContextDatabase::Get(const std::string& locality_id,
                            const std::string& context_id) const {
  return records_.at(std::make_pair(locality_id, context_id));
}

std::vector<TrackingContext> PartitionTimeline(Seconds tau_tc, Seconds horizon,
                                               const Locality& locality) {
  if (tau_tc <= 0) {
    throw std::invalid_argument("tau_tc must be positive");
  }
  if (horizon <= 0 || horizon % tau_tc != 0) {
    throw std::invalid_argument(
        "horizon must be a positive multiple of tau_tc");
  }
  std::vector<TrackingContext> out;
  out.reserve(static_cast<std::size_t>(horizon / tau_tc));
  std::int64_t counter = 0;
  for (Seconds t = 0; t < horizon; t += tau_tc) {
    TrackingContext tc;
    tc.tc_id = locality.id + "/tc" + std::to_string(counter++);
    tc.locality_id = locality.id;
    tc.start = t;
    tc.end = t + tau_tc;
    out.push_back(std::move(tc));
  }
  return out;
}

AggregationWindowSpec ValidateAwSpec(Seconds aw_duration, Seconds max_ec_sys,
                                     Seconds tau_tc) {
  if (aw_duration <= 0 || max_ec_sys <= 0 || tau_tc <= 0) {
    throw std::invalid_argument("durations must be positive");
  }
  if (aw_duration % tau_tc != 0) {
    throw std::invalid_argument("aw_duration must be a multiple of tau_tc");
  }
  if (max_ec_sys % aw_duration != 0) {
    throw std::invalid_argument("aw_duration must divide max_ec_sys");
  }
  const std::int64_t n = max_ec_sys / aw_duration;
  if (n < 2 || !IsPowerOfTwo(n)) {
    throw std::invalid_argument("max_ec_sys / aw_duration must be 2^h, h >= 1");
  }
  AggregationWindowSpec spec;
  spec.aw_duration = aw_duration;
  spec.max_ec_sys = max_ec_sys;
  spec.n = n;
  return spec;
}

std::int64_t AwIndexOf(const TrackingContext& tc, Seconds container_start,
                       Seconds aw_duration) {
  if (aw_duration <= 0 || tc.start < container_start) {
    throw std::invalid_argument("tc must start inside the container");
  }
  return (tc.start - container_start) / aw_duration;
}

}  // namespace edgedp
