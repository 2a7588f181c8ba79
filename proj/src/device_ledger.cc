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

#include "edgedp/device_ledger.h"

#include <cstdio>
#include <stdexcept>
#include <utility>

namespace edgedp {

namespace {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

DeviceLedger::DeviceLedger(std::string device_id,
                           double default_epoch_capacity)
    : device_id_(std::move(device_id)),
      default_epoch_capacity_(default_epoch_capacity) {
  if (device_id_.empty()) {
    throw std::invalid_argument("device id must be non-empty");
  }
  if (!(default_epoch_capacity_ >= 0.0)) {
    throw std::invalid_argument("epoch capacity must be non-negative");
  }
}

void DeviceLedger::ReceiveBroadcast(const BroadcastMessage& message) {
  if (message.rho_node < 0.0) {
    throw std::invalid_argument("broadcast rhoNode must be non-negative");
  }
  if (!seen_tc_ids_.insert(message.tc_id).second) {
    return;
  }
  epsilon_acc_ += message.rho_node;
}

EpochBudget& DeviceLedger::EpochOrCreate(std::int64_t epoch_id) {
  auto it = epochs_.find(epoch_id);
  if (it == epochs_.end()) {
    it = epochs_
             .emplace(epoch_id,
                      EpochBudget{epoch_id, default_epoch_capacity_, 0.0})
             .first;
  }
  return it->second;
}

ReportOutcome DeviceLedger::ChargeReport(std::int64_t epoch_id,
                                         double eps_report) {
  if (!(eps_report > 0.0)) {
    throw std::invalid_argument("report epsilon must be positive");
  }
  EpochBudget& epoch = EpochOrCreate(epoch_id);
  if (epoch.spent + eps_report > epoch.capacity) {
    return ReportOutcome::kNull;
  }
  epoch.spent += eps_report;
  return ReportOutcome::kReal;
}

void DeviceLedger::SetEpochCapacity(std::int64_t epoch_id, double capacity) {
  if (!(capacity >= 0.0)) {
    throw std::invalid_argument("epoch capacity must be non-negative");
  }
  EpochBudget& epoch = EpochOrCreate(epoch_id);
  if (capacity < epoch.spent) {
    throw std::invalid_argument("capacity cannot drop below spent budget");
  }
  epoch.capacity = capacity;
}

double DeviceLedger::TotalLoss() const {
  double total = epsilon_acc_;
  for (const auto& [id, epoch] : epochs_) {
    total += epoch.spent;
  }
  return total;
}

std::string FormatLedgerCsv(const std::vector<const DeviceLedger*>& ledgers) {
  std::string out = "deviceId,epsilonAcc,epochId,spent,capacity\n";
  for (const DeviceLedger* ledger : ledgers) {
    if (ledger == nullptr) {
      throw std::invalid_argument("null ledger in csv dump");
    }
    const std::string acc = FormatDouble(ledger->epsilon_acc());
    if (ledger->epochs().empty()) {
      out += ledger->device_id() + "," + acc + ",,,\n";
      continue;
    }
    for (const auto& [id, epoch] : ledger->epochs()) {
      out += ledger->device_id() + "," + acc + "," + std::to_string(id) +
             "," + FormatDouble(epoch.spent) + "," +
             FormatDouble(epoch.capacity) + "\n";
    }
  }
  return out;
}

}  // namespace edgedp
