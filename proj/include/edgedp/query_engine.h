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

#ifndef EDGEDP_QUERY_ENGINE_H_
#define EDGEDP_QUERY_ENGINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgedp/binary_tree.h"
#include "edgedp/core_model.h"
#include "edgedp/noise.h"

namespace edgedp {

enum class Aggregate { kCount, kSum, kAvg };
enum class QueryMode { kTrusted, kUntrusted };
enum class CompareOp { kLt, kLe, kGt, kGe, kEq, kNe };

// One conjunct of the feature filter: attribute op constant. The only
// scalar attribute a detection carries is "value".
struct Comparison {
  std::string attribute;
  CompareOp op = CompareOp::kEq;
  double constant = 0.0;
};

// lastFrame <=> cumulative_frames == 1 aggregated over the final frame only;
// cumulative(k) aggregates over the last k frames of the AW.
struct FrameScope {
  bool cumulative = false;
  std::int64_t k = 1;
};

struct QuerySpec {
  std::string label;
  Aggregate aggregate = Aggregate::kCount;
  std::vector<std::string> object_types;  // empty = no type restriction
  std::vector<Comparison> predicate;      // conjunction
  Seconds aw_duration = 0;
  double sigma_q = 0.0;
  QueryMode mode = QueryMode::kTrusted;
  double declared_s = 0.0;  // untrusted cap S
  double v_max = 0.0;       // sum/avg value bound
  FrameScope scope;
};

struct SensitivityModel {
  QueryMode mode = QueryMode::kTrusted;
  double mu_q = 0.0;       // per-ID sensitivity, trusted only
  double rho_track = 1.0;  // tracking error factor, trusted only
  double declared_s = 0.0;
  double effective_delta = 0.0;
};

struct BroadcastMessage {
  std::string locality;
  std::string tc_id;
  double rho_node = 0.0;
};

struct CloudRelease {
  std::string locality;
  std::string query;
  ReleaseRecord release;
};

using QueryHandle = std::size_t;

// Worst-case per-ID change of the query output over one AW:
//   COUNT lastFrame: 1          COUNT cumulative(k): k
//   SUM   lastFrame: v_max      SUM   cumulative(k): k * v_max
// AVG is accounted as its scaled-sum component (see RegisterQuery).
double MuQ(const QuerySpec& spec);

// Trusted: effectiveDelta = rho_track * mu_q. Untrusted: declared_s.
// Throws std::invalid_argument for trusted mode with rho_track < 1.
SensitivityModel DeriveSensitivity(const QuerySpec& spec, double rho_track);

// sigma_q that realizes per-node privacy parameter epsilon for a query of
// sensitivity delta: sigma = delta * sqrt(2) / epsilon (inverse of
// epsilon_q = delta * sqrt(2) / sigma_q).
double SigmaForEpsilon(double delta, double epsilon);

// Per-context privacy loss over (N_q, epsilon_q) pairs:
// rho_node = sum_q (log2 N_q + 2) * epsilon_q.
double NodeFilter(const std::vector<std::pair<std::int64_t, double>>& n_eps);

// Trusted evaluation of one aggregate over one AW's detection record.
// COUNT uses distinct-trackId semantics; SUM clamps each value to
// [0, v_max]. AVG returns SUM/COUNT (0 when the count is 0); the released
// form is the separate SUM and COUNT, so this ratio is for display only.
// Throws std::invalid_argument on an empty record.
double EvaluateQuery(const QuerySpec& spec, const DetectionRecord& record);

// Untrusted evaluation: the application-supplied scalar clamped to
// [0, declared_s].
double ClampUntrusted(const QuerySpec& spec, double raw);

// Parses the registration text form, e.g.
//   COUNT OVER stream WHERE objectType IN (bicycle) AND value >= 2
//   WINDOWED BY 60 WITH SIGMA 1 MODE trusted SENSITIVITY 100 VMAX 30
//   SCOPE cumulative 4
// Keywords are case-insensitive. Throws std::invalid_argument on malformed
// input.
QuerySpec ParseQueryText(const std::string& text);

// Node-side query service: registration/validation, sensitivity derivation,
// one independent binary tree (plus shadow) per registered mechanism, node
// filter computation, and privacy-loss broadcasts.
//
// AVG queries release a noisy SUM and a noisy COUNT through two
// sub-mechanisms; both are charged in rho_node.
class QueryEngine {
 public:
  QueryEngine(std::string locality_id, Seconds max_ec_sys, Seconds tau_tc,
              double rho_track, std::uint64_t seed);

  // Validates and registers. A query registered mid-container activates only
  // at the next container boundary so the per-TC pre-charge stays sound.
  // Throws std::invalid_argument on validation failure.
  QueryHandle RegisterQuery(const QuerySpec& spec);

  bool IsActive(QueryHandle handle) const;
  const QuerySpec& Spec(QueryHandle handle) const;
  SensitivityModel Sensitivity(QueryHandle handle) const;

  // Per-node-release epsilon of each sub-mechanism of this query.
  std::vector<double> Epsilons(QueryHandle handle) const;

  struct AwResult {
    std::vector<CloudRelease> releases;
    std::vector<BroadcastMessage> broadcasts;
  };

  // Feeds one completed AW value into the query's mechanism(s) and emits the
  // pre-charge broadcast for every TC the AW covers. Container end (after
  // leaf N_q) is handled internally and appends the shadow bridge release.
  // Single-value form is for COUNT/SUM; AVG requires the two-value form
  // (sum, count).
  AwResult OnAwRelease(QueryHandle handle, double y,
                       const std::vector<std::string>& tc_ids);
  AwResult OnAwRelease(QueryHandle handle, const std::vector<double>& ys,
                       const std::vector<std::string>& tc_ids);

  // Convenience: evaluates the record (trusted) and feeds the result;
  // rejects a record whose AW index is not the query's next expected leaf.
  AwResult EvaluateAndRelease(QueryHandle handle, const DetectionRecord& record,
                              const std::vector<std::string>& tc_ids);

  // Node filter over the currently active query set.
  double ComputeNodeFilter() const;

  double rho_track() const { return rho_track_; }
  std::int64_t NqOf(QueryHandle handle) const;

 private:
  struct SubMechanism {
    double delta = 0.0;
    double epsilon = 0.0;
    BinaryTree tree;
  };
  struct Registration {
    QuerySpec spec;
    SensitivityModel sensitivity;
    std::int64_t n_q = 0;
    bool active = false;
    std::vector<SubMechanism> mechs;
    std::int64_t containers_completed = 0;
    std::int64_t leaves_fed = 0;  // within the current container
  };

  void ActivatePendingAtBoundary();
  Registration& Reg(QueryHandle handle);
  const Registration& Reg(QueryHandle handle) const;

  std::string locality_id_;
  Seconds max_ec_sys_;
  Seconds tau_tc_;
  double rho_track_;
  std::uint64_t seed_;
  std::vector<Registration> queries_;
};

// Synthetic stand-in for the detection/tracking pipeline. Each ground-truth
// individual receives between 1 and rho_track distinct track ids per TC,
// sampled from the multiplicity pmf (pmf[m-1] = P(m ids)) truncated at
// rho_track; ids are globally unique and never survive a TC boundary.
// One DetectionRecord per TC, frames_per_tc frames each, every id present in
// every frame.
struct ScenarioIndividual {
  std::string object_type;
  double value = 0.0;
};

struct StreamScenario {
  std::vector<std::vector<ScenarioIndividual>> per_tc_individuals;
  int frames_per_tc = 1;
};

// The identification-multiplicity distribution used by default:
// P(1)=.565, P(2)=.205, P(3)=.115, P(4)=.050, P(5)=.034, P(6)=.015,
// P(7)=.008, P(8)=.005, P(9)=.003.
const std::vector<double>& DefaultMultiplicityPmf();

std::vector<DetectionRecord> TrackedDetectionStream(
    const StreamScenario& scenario, int rho_track,
    const std::vector<double>& multiplicity_pmf, std::uint64_t seed);

std::string FormatCloudReleasesCsv(const std::vector<CloudRelease>& releases);

}  // namespace edgedp

#endif  // EDGEDP_QUERY_ENGINE_H_
