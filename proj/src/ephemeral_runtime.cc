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

#include "edgedp/ephemeral_runtime.h"

#include <sstream>
#include <stdexcept>

namespace edgedp {

std::int64_t FramesFromSeconds(std::int64_t seconds,
                               std::int64_t frames_per_second) {
  if (seconds < 0 || frames_per_second <= 0) {
    throw std::invalid_argument("need seconds >= 0 and a positive frame rate");
  }
  return seconds * frames_per_second;
}

ContainerSlot::ContainerSlot(const ContainerConfig& config,
                             const RotationLimits& limits,
                             std::string locality_id)
    : config_(config), locality_id_(std::move(locality_id)) {
  if (config.min_ec < 0 || config.max_ec <= 0 ||
      config.min_ec >= config.max_ec) {
    throw std::invalid_argument("need 0 <= minEC < maxEC");
  }
  const std::int64_t cap = config.role == ContainerRole::kApplication
                               ? limits.max_ec_app
                               : limits.max_ec_sys;
  if (config.max_ec > cap) {
    throw std::invalid_argument("maxEC exceeds the role limit");
  }
  // The paper wants minEC << maxEC; a large ratio is legal but suspicious.
  min_ec_ratio_warning_ = config.min_ec > config.max_ec / 2;
  active_.instance_id = next_instance_id_++;
  active_.state = InstanceState::kActive;
  active_.first_frame = 0;
}

bool ContainerSlot::ShadowReady() const {
  return shadow_.has_value() && shadow_->frame_count == config_.min_ec;
}

void ContainerSlot::Switch(std::vector<RotationEvent>* events) {
  ContainerInstance old = std::move(active_);
  active_ = std::move(*shadow_);
  shadow_.reset();
  active_.state = InstanceState::kActive;
  events->push_back(
      {frame_index_, RotationEventKind::kSwitched, active_.instance_id});
  // Synchronous teardown: destroy frames and evict the outputs before this
  // advance returns.
  old.state = InstanceState::kTornDown;
  old.frames.clear();
  for (OutputRecord& rec : outputs_) {
    if (rec.evict_at_teardown_of == old.instance_id) {
      rec.evicted = true;
      rec.payload.clear();
    }
  }
  events->push_back(
      {frame_index_, RotationEventKind::kTornDown, old.instance_id});
}

void ContainerSlot::Launch(std::vector<RotationEvent>* events) {
  ContainerInstance shadow;
  shadow.instance_id = next_instance_id_++;
  shadow.state = InstanceState::kWarming;
  shadow.first_frame = frame_index_;
  shadow_ = std::move(shadow);
  events->push_back({frame_index_, RotationEventKind::kShadowLaunched,
                     shadow_->instance_id});
}

std::vector<RotationEvent> ContainerSlot::AdvanceFrame() {
  std::vector<RotationEvent> events;
  if (ShadowReady()) {
    Switch(&events);
  }
  // >= rather than ==: when minEC exceeds maxEC/2 a fresh active starts
  // above the launch threshold, and the slot must still keep rotating.
  if (!shadow_.has_value() &&
      active_.frame_count >= config_.max_ec - config_.min_ec) {
    Launch(&events);
    if (ShadowReady()) {
      // minEC = 0: the fresh shadow is already warm, so the slot tumbles.
      Switch(&events);
    }
  }
  active_.frames.push_back(frame_index_);
  active_.frame_count += 1;
  if (shadow_.has_value()) {
    shadow_->frames.push_back(frame_index_);
    shadow_->frame_count += 1;
  }
  ++frame_index_;
  for (const RotationEvent& e : events) {
    event_log_.push_back(e);
  }
  return events;
}

VisibleWindow ContainerSlot::Window() const {
  VisibleWindow w;
  w.frames = active_.frames;
  // Warming only before the very first instance accumulates minEC frames;
  // every later instance is born holding exactly minEC.
  w.warming = active_.instance_id == 0 && active_.frame_count < config_.min_ec;
  return w;
}

OutputHandle ContainerSlot::EmitOutputFrom(std::int64_t instance_id,
                                           std::string payload,
                                           std::int64_t hop_budget) {
  if (shadow_.has_value() && instance_id == shadow_->instance_id) {
    throw std::logic_error("shadow instances cannot emit outputs");
  }
  if (instance_id != active_.instance_id) {
    throw std::logic_error("producing instance is not active");
  }
  return EmitOutput(std::move(payload), hop_budget);
}

OutputHandle ContainerSlot::EmitOutput(std::string payload,
                                       std::int64_t hop_budget) {
  if (hop_budget < 0) {
    throw std::invalid_argument("hop budget must be non-negative");
  }
  OutputRecord rec;
  rec.payload = std::move(payload);
  rec.producer_instance = active_.instance_id;
  rec.evict_at_teardown_of = active_.instance_id;
  rec.hop_budget = hop_budget;
  rec.origin_locality = locality_id_;
  rec.emitted_during_warmup = Window().warming;
  outputs_.push_back(std::move(rec));
  return outputs_.size() - 1;
}

std::optional<std::string> ContainerSlot::ReadOutput(OutputHandle handle) const {
  const OutputRecord& rec = Output(handle);
  if (rec.evicted) {
    return std::nullopt;
  }
  return rec.payload;
}

std::optional<OutputHandle> ContainerSlot::ForwardOutput(OutputHandle handle,
                                                         bool admin_permitted) {
  const OutputRecord& rec = Output(handle);
  if (rec.evicted) {
    throw std::logic_error("cannot forward an evicted record");
  }
  if (!admin_permitted || rec.hop_budget == 0) {
    return std::nullopt;
  }
  OutputRecord copy = rec;
  copy.hop_budget -= 1;
  outputs_.push_back(std::move(copy));
  return outputs_.size() - 1;
}

const OutputRecord& ContainerSlot::Output(OutputHandle handle) const {
  if (handle >= outputs_.size()) {
    throw std::out_of_range("unknown output record");
  }
  return outputs_[handle];
}

const ContainerInstance& ContainerSlot::active() const { return active_; }

const ContainerInstance& ContainerSlot::shadow() const {
  if (!shadow_.has_value()) {
    throw std::logic_error("no shadow instance");
  }
  return *shadow_;
}

int ContainerSlot::LiveInstanceCount() const {
  return shadow_.has_value() ? 2 : 1;
}

std::string FormatRotationTraceCsv(const std::vector<RotationEvent>& events) {
  std::ostringstream out;
  out << "frameIndex,event,instanceId\n";
  for (const RotationEvent& e : events) {
    const char* name = "shadowLaunched";
    if (e.kind == RotationEventKind::kSwitched) name = "switched";
    if (e.kind == RotationEventKind::kTornDown) name = "tornDown";
    out << e.frame_index << ',' << name << ',' << e.instance_id << '\n';
  }
  return out.str();
}

}  // namespace edgedp
