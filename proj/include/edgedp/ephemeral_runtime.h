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

#ifndef EDGEDP_EPHEMERAL_RUNTIME_H_
#define EDGEDP_EPHEMERAL_RUNTIME_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgedp {

enum class ContainerRole { kApplication, kSystem };

// minEC / maxEC are counted in frames, the simulator's clock. Conversion
// from seconds uses FramesFromSeconds with the deployment frame rate.
struct ContainerConfig {
  std::int64_t min_ec = 0;
  std::int64_t max_ec = 0;
  ContainerRole role = ContainerRole::kApplication;
};

struct RotationLimits {
  std::int64_t max_ec_app = 3600;
  std::int64_t max_ec_sys = 86400;
};

std::int64_t FramesFromSeconds(std::int64_t seconds, std::int64_t frames_per_second);

enum class InstanceState { kWarming, kActive, kTornDown };

struct ContainerInstance {
  std::int64_t instance_id = 0;
  InstanceState state = InstanceState::kWarming;
  std::int64_t first_frame = 0;
  std::int64_t frame_count = 0;
  // Destroyed (cleared) at teardown; holds arrival indices of fed frames.
  std::vector<std::int64_t> frames;
};

enum class RotationEventKind { kShadowLaunched, kSwitched, kTornDown };

struct RotationEvent {
  std::int64_t frame_index = 0;
  RotationEventKind kind = RotationEventKind::kShadowLaunched;
  std::int64_t instance_id = 0;
};

struct OutputRecord {
  std::string payload;
  std::int64_t producer_instance = 0;
  std::int64_t evict_at_teardown_of = 0;
  std::int64_t hop_budget = 0;
  std::string origin_locality;
  bool emitted_during_warmup = false;
  bool evicted = false;
};

using OutputHandle = std::size_t;

struct VisibleWindow {
  std::vector<std::int64_t> frames;
  bool warming = false;
};

// One container slot: an active instance, at most one warming shadow, and
// the node-local output buffer whose records die with their producers.
//
// Rotation: when the active instance has held exactly maxEC - minEC frames,
// a shadow launches and is fed every subsequent frame; the moment the shadow
// holds minEC frames it becomes active and the old instance is torn down
// (synchronously, destroying its frames and evicting its outputs). Each
// instance therefore sees exactly maxEC frames over its lifetime, and after
// warmup the visible window size stays within [minEC, maxEC].
class ContainerSlot {
 public:
  ContainerSlot(const ContainerConfig& config, const RotationLimits& limits,
                std::string locality_id);

  // Feeds the next frame; returns the rotation events it triggered.
  std::vector<RotationEvent> AdvanceFrame();

  VisibleWindow Window() const;

  // Emits a record from the current active instance. hop_budget defaults to
  // 0 (no forwarding without explicit provisioning).
  OutputHandle EmitOutput(std::string payload, std::int64_t hop_budget = 0);

  // Same, but naming the producer explicitly. Shadows cannot emit, and a
  // torn-down instance cannot emit; both are std::logic_error.
  OutputHandle EmitOutputFrom(std::int64_t instance_id, std::string payload,
                              std::int64_t hop_budget = 0);

  // nullopt once the producer is torn down.
  std::optional<std::string> ReadOutput(OutputHandle handle) const;

  // Hop-bounded forwarding: requires administrative permission and
  // hop_budget > 0; the delivered copy carries hop_budget - 1 and still
  // evicts with the original producer. Returns nullopt on denial.
  // Throws std::logic_error for an already-evicted record.
  std::optional<OutputHandle> ForwardOutput(OutputHandle handle,
                                            bool admin_permitted);

  const OutputRecord& Output(OutputHandle handle) const;

  std::int64_t frame_index() const { return frame_index_; }
  const ContainerInstance& active() const;
  bool has_shadow() const { return shadow_.has_value(); }
  const ContainerInstance& shadow() const;
  int LiveInstanceCount() const;
  bool min_ec_ratio_warning() const { return min_ec_ratio_warning_; }
  const std::vector<RotationEvent>& event_log() const { return event_log_; }

 private:
  void Switch(std::vector<RotationEvent>* events);
  void Launch(std::vector<RotationEvent>* events);
  bool ShadowReady() const;

  ContainerConfig config_;
  std::string locality_id_;
  bool min_ec_ratio_warning_ = false;
  std::int64_t frame_index_ = 0;   // next arrival index
  std::int64_t next_instance_id_ = 0;
  ContainerInstance active_;
  std::optional<ContainerInstance> shadow_;
  std::vector<OutputRecord> outputs_;
  std::vector<RotationEvent> event_log_;
};

// CSV export of rotation events: (frameIndex, event, instanceId).
std::string FormatRotationTraceCsv(const std::vector<RotationEvent>& events);

}  // namespace edgedp

#endif  // EDGEDP_EPHEMERAL_RUNTIME_H_
