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

#ifndef EDGEDP_DEVICE_LEDGER_H_
#define EDGEDP_DEVICE_LEDGER_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "edgedp/core_model.h"
#include "edgedp/query_engine.h"

namespace edgedp {

// One epoch's reporting budget. `spent` grows only through successful
// charges and never exceeds `capacity`.
struct EpochBudget {
  std::int64_t epoch_id = 0;
  double capacity = 0.0;
  double spent = 0.0;
};

enum class ReportOutcome {
  kReal,
  kNull,
};

// Epochs are fixed-width weeks of simulation time.
inline constexpr Seconds kEpochSeconds = 7 * 24 * 3600;

inline std::int64_t EpochOf(Seconds t) { return t / kEpochSeconds; }

// Per-device privacy accounting. Two pools are tracked separately:
// a passive accumulator fed by locality broadcasts (the device cannot
// refuse these, it can only count them), and per-epoch budgets that
// gate the device's own voluntary reports.
class DeviceLedger {
 public:
  // default_epoch_capacity seeds the budget of any epoch first touched
  // by ChargeReport. May be infinity, in which case no report is ever
  // converted to a null.
  DeviceLedger(std::string device_id, double default_epoch_capacity);

  // Folds a locality broadcast into the passive accumulator. A tracking
  // context is counted at most once no matter how many times or in what
  // order its broadcast is delivered.
  void ReceiveBroadcast(const BroadcastMessage& message);

  // Attempts to spend eps_report from the epoch's budget. The charge is
  // all-or-nothing: either the full amount is deducted and the report
  // goes out real, or the budget is left untouched and the caller must
  // send a null report instead. Unknown epochs are created on first use
  // with the default capacity.
  ReportOutcome ChargeReport(std::int64_t epoch_id, double eps_report);

  // Overrides the capacity of one epoch, creating it if needed.
  void SetEpochCapacity(std::int64_t epoch_id, double capacity);

  double epsilon_acc() const { return epsilon_acc_; }

  // Passive accumulator plus everything spent across epochs.
  double TotalLoss() const;

  const std::string& device_id() const { return device_id_; }
  const std::map<std::int64_t, EpochBudget>& epochs() const {
    return epochs_;
  }
  std::size_t seen_context_count() const { return seen_tc_ids_.size(); }

 private:
  EpochBudget& EpochOrCreate(std::int64_t epoch_id);

  std::string device_id_;
  double default_epoch_capacity_;
  double epsilon_acc_ = 0.0;
  std::set<std::string> seen_tc_ids_;
  std::map<std::int64_t, EpochBudget> epochs_;
};

// One row per (device, epoch): deviceId,epsilonAcc,epochId,spent,capacity.
// Devices that never touched an epoch contribute a single row with the
// epoch columns empty so their passive loss still shows up in the dump.
std::string FormatLedgerCsv(const std::vector<const DeviceLedger*>& ledgers);

}  // namespace edgedp

#endif  // EDGEDP_DEVICE_LEDGER_H_
