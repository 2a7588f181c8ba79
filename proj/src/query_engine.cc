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

#include "edgedp/query_engine.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace edgedp {

namespace {

bool MatchesType(const QuerySpec& spec, const std::string& type) {
  if (spec.object_types.empty()) return true;
  return std::find(spec.object_types.begin(), spec.object_types.end(), type) !=
         spec.object_types.end();
}

bool Holds(const Comparison& c, double v) {
  switch (c.op) {
    case CompareOp::kLt: return v < c.constant;
    case CompareOp::kLe: return v <= c.constant;
    case CompareOp::kGt: return v > c.constant;
    case CompareOp::kGe: return v >= c.constant;
    case CompareOp::kEq: return v == c.constant;
    case CompareOp::kNe: return v != c.constant;
  }
  return false;
}

bool Matches(const QuerySpec& spec, const TrackedObject& obj) {
  if (!MatchesType(spec, obj.object_type)) return false;
  for (const Comparison& c : spec.predicate) {
    if (c.attribute != "value") {
      throw std::invalid_argument("unknown predicate attribute: " + c.attribute);
    }
    if (!Holds(c, obj.value)) return false;
  }
  return true;
}

// Frames covered by the query's scope: the last frame, or the last k.
std::size_t ScopeBegin(const QuerySpec& spec, std::size_t frame_count) {
  const std::int64_t k = spec.scope.cumulative ? spec.scope.k : 1;
  if (static_cast<std::size_t>(k) >= frame_count) return 0;
  return frame_count - static_cast<std::size_t>(k);
}

void ValidateSpec(const QuerySpec& spec, Seconds max_ec_sys, Seconds tau_tc) {
  ValidateAwSpec(spec.aw_duration, max_ec_sys, tau_tc);  // throws on failure
  if (spec.sigma_q <= 0.0) {
    throw std::invalid_argument("sigma_q must be positive");
  }
  if (spec.mode == QueryMode::kUntrusted && spec.declared_s <= 0.0) {
    throw std::invalid_argument("untrusted queries must declare a sensitivity bound");
  }
  if (spec.mode == QueryMode::kTrusted &&
      (spec.aggregate == Aggregate::kSum || spec.aggregate == Aggregate::kAvg) &&
      spec.v_max <= 0.0) {
    throw std::invalid_argument("sum/avg queries need a positive v_max");
  }
  if (spec.scope.cumulative && spec.scope.k < 1) {
    throw std::invalid_argument("cumulative scope needs k >= 1");
  }
}

}  // namespace

double MuQ(const QuerySpec& spec) {
  const double k = spec.scope.cumulative ? static_cast<double>(spec.scope.k) : 1.0;
  switch (spec.aggregate) {
    case Aggregate::kCount:
      return k;
    case Aggregate::kSum:
    case Aggregate::kAvg:
      return k * spec.v_max;
  }
  return 0.0;
}

SensitivityModel DeriveSensitivity(const QuerySpec& spec, double rho_track) {
  SensitivityModel m;
  m.mode = spec.mode;
  if (spec.mode == QueryMode::kUntrusted) {
    if (spec.declared_s <= 0.0) {
      throw std::invalid_argument("untrusted mode needs declared_s > 0");
    }
    m.declared_s = spec.declared_s;
    m.effective_delta = spec.declared_s;
    return m;
  }
  if (rho_track < 1.0) {
    throw std::invalid_argument("rho_track must be >= 1");
  }
  m.mu_q = MuQ(spec);
  m.rho_track = rho_track;
  m.effective_delta = rho_track * m.mu_q;
  return m;
}

double SigmaForEpsilon(double delta, double epsilon) {
  if (delta <= 0.0 || epsilon <= 0.0) {
    throw std::invalid_argument("delta and epsilon must be positive");
  }
  return delta * std::sqrt(2.0) / epsilon;
}

double NodeFilter(const std::vector<std::pair<std::int64_t, double>>& n_eps) {
  double rho = 0.0;
  for (const auto& [n, eps] : n_eps) {
    if (n < 2 || !IsPowerOfTwo(n)) {
      throw std::invalid_argument("N_q must be a power of two >= 2");
    }
    const int log2n = std::bit_width(static_cast<std::uint64_t>(n)) - 1;
    rho += (log2n + 2) * eps;
  }
  return rho;
}

double EvaluateQuery(const QuerySpec& spec, const DetectionRecord& record) {
  if (record.frames.empty()) {
    throw std::invalid_argument("detection record has no frames");
  }
  const std::size_t begin = ScopeBegin(spec, record.frames.size());
  const bool wants_sum =
      spec.aggregate == Aggregate::kSum || spec.aggregate == Aggregate::kAvg;
  std::set<std::int64_t> distinct;
  double sum = 0.0;
  for (std::size_t f = begin; f < record.frames.size(); ++f) {
    for (const TrackedObject& obj : record.frames[f]) {
      if (!Matches(spec, obj)) continue;
      distinct.insert(obj.track_id);
      if (wants_sum) {
        sum += std::clamp(obj.value, 0.0, spec.v_max);
      }
    }
  }
  switch (spec.aggregate) {
    case Aggregate::kCount:
      return static_cast<double>(distinct.size());
    case Aggregate::kSum:
      return sum;
    case Aggregate::kAvg:
      return distinct.empty() ? 0.0 : sum / static_cast<double>(distinct.size());
  }
  return 0.0;
}

double ClampUntrusted(const QuerySpec& spec, double raw) {
  if (spec.mode != QueryMode::kUntrusted) {
    throw std::invalid_argument("query is not in untrusted mode");
  }
  return std::clamp(raw, 0.0, spec.declared_s);
}

QueryEngine::QueryEngine(std::string locality_id, Seconds max_ec_sys,
                         Seconds tau_tc, double rho_track, std::uint64_t seed)
    : locality_id_(std::move(locality_id)),
      max_ec_sys_(max_ec_sys),
      tau_tc_(tau_tc),
      rho_track_(rho_track),
      seed_(seed) {
  if (rho_track < 1.0) {
    throw std::invalid_argument("rho_track must be >= 1");
  }
}

QueryHandle QueryEngine::RegisterQuery(const QuerySpec& spec) {
  ValidateSpec(spec, max_ec_sys_, tau_tc_);
  Registration reg;
  reg.spec = spec;
  if (reg.spec.label.empty()) {
    reg.spec.label = "q" + std::to_string(queries_.size());
  }
  reg.sensitivity = DeriveSensitivity(spec, rho_track_);
  reg.n_q = max_ec_sys_ / spec.aw_duration;

  // AVG releases a scaled-sum and a count; everything else is one mechanism.
  std::vector<double> deltas;
  if (spec.mode == QueryMode::kUntrusted) {
    deltas.push_back(spec.declared_s);
  } else if (spec.aggregate == Aggregate::kAvg) {
    const double k = spec.scope.cumulative ? static_cast<double>(spec.scope.k) : 1.0;
    deltas.push_back(rho_track_ * k * spec.v_max);
    deltas.push_back(rho_track_ * k);
  } else {
    deltas.push_back(reg.sensitivity.effective_delta);
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    SubMechanism mech{
        deltas[i],
        deltas[i] * std::sqrt(2.0) / spec.sigma_q,
        // Laplace scale delta/epsilon = sigma_q/sqrt(2): noise std sigma_q.
        BinaryTree(reg.n_q, NoiseSpec::Laplace(spec.sigma_q / std::sqrt(2.0)),
                   SplitMix64(seed_ + queries_.size() * 16 + i))};
    reg.mechs.push_back(std::move(mech));
  }

  // Mid-container registrations wait for the boundary; "mid-container" means
  // any active query has open leaves.
  bool mid_container = false;
  for (const Registration& q : queries_) {
    if (q.active && q.leaves_fed > 0) mid_container = true;
  }
  reg.active = !mid_container;
  queries_.push_back(std::move(reg));
  return queries_.size() - 1;
}

QueryEngine::Registration& QueryEngine::Reg(QueryHandle handle) {
  if (handle >= queries_.size()) {
    throw std::out_of_range("unknown query handle");
  }
  return queries_[handle];
}

const QueryEngine::Registration& QueryEngine::Reg(QueryHandle handle) const {
  if (handle >= queries_.size()) {
    throw std::out_of_range("unknown query handle");
  }
  return queries_[handle];
}

bool QueryEngine::IsActive(QueryHandle handle) const { return Reg(handle).active; }

const QuerySpec& QueryEngine::Spec(QueryHandle handle) const {
  return Reg(handle).spec;
}

SensitivityModel QueryEngine::Sensitivity(QueryHandle handle) const {
  return Reg(handle).sensitivity;
}

std::vector<double> QueryEngine::Epsilons(QueryHandle handle) const {
  std::vector<double> eps;
  for (const SubMechanism& m : Reg(handle).mechs) {
    eps.push_back(m.epsilon);
  }
  return eps;
}

std::int64_t QueryEngine::NqOf(QueryHandle handle) const { return Reg(handle).n_q; }

double QueryEngine::ComputeNodeFilter() const {
  double rho = 0.0;
  for (const Registration& q : queries_) {
    if (!q.active) continue;
    const int log2n = std::bit_width(static_cast<std::uint64_t>(q.n_q)) - 1;
    for (const SubMechanism& m : q.mechs) {
      rho += (log2n + 2) * m.epsilon;
    }
  }
  return rho;
}

void QueryEngine::ActivatePendingAtBoundary() {
  for (const Registration& q : queries_) {
    if (q.active && q.leaves_fed > 0) return;  // still mid-container
  }
  for (Registration& q : queries_) {
    q.active = true;
  }
}

QueryEngine::AwResult QueryEngine::OnAwRelease(
    QueryHandle handle, double y, const std::vector<std::string>& tc_ids) {
  return OnAwRelease(handle, std::vector<double>{y}, tc_ids);
}

QueryEngine::AwResult QueryEngine::OnAwRelease(
    QueryHandle handle, const std::vector<double>& ys,
    const std::vector<std::string>& tc_ids) {
  Registration& reg = Reg(handle);
  if (!reg.active) {
    throw std::logic_error("query activates at the next container boundary");
  }
  if (ys.size() != reg.mechs.size()) {
    throw std::invalid_argument("expected one value per sub-mechanism");
  }
  AwResult result;
  for (std::size_t i = 0; i < reg.mechs.size(); ++i) {
    for (const ReleaseRecord& rec : reg.mechs[i].tree.AddLeaf(ys[i])) {
      result.releases.push_back({locality_id_, reg.spec.label, rec});
    }
  }
  reg.leaves_fed += 1;
  if (reg.leaves_fed == reg.n_q) {
    for (SubMechanism& m : reg.mechs) {
      result.releases.push_back({locality_id_, reg.spec.label, m.tree.ContainerEnd()});
    }
    reg.leaves_fed = 0;
    reg.containers_completed += 1;
    ActivatePendingAtBoundary();
  }
  const double rho = ComputeNodeFilter();
  for (const std::string& tc : tc_ids) {
    result.broadcasts.push_back({locality_id_, tc, rho});
  }
  return result;
}

QueryEngine::AwResult QueryEngine::EvaluateAndRelease(
    QueryHandle handle, const DetectionRecord& record,
    const std::vector<std::string>& tc_ids) {
  Registration& reg = Reg(handle);
  const std::int64_t expected =
      reg.containers_completed * reg.n_q + reg.leaves_fed;
  if (record.aw_index != expected) {
    throw std::invalid_argument("record does not cover the query's next AW");
  }
  if (reg.spec.mode != QueryMode::kTrusted) {
    throw std::invalid_argument("untrusted queries supply their own scalar");
  }
  if (reg.spec.aggregate == Aggregate::kAvg) {
    QuerySpec sum_spec = reg.spec;
    sum_spec.aggregate = Aggregate::kSum;
    QuerySpec count_spec = reg.spec;
    count_spec.aggregate = Aggregate::kCount;
    return OnAwRelease(handle,
                       std::vector<double>{EvaluateQuery(sum_spec, record),
                                           EvaluateQuery(count_spec, record)},
                       tc_ids);
  }
  return OnAwRelease(handle, EvaluateQuery(reg.spec, record), tc_ids);
}

const std::vector<double>& DefaultMultiplicityPmf() {
  static const std::vector<double> pmf = {0.565, 0.205, 0.115, 0.050, 0.034,
                                          0.015, 0.008, 0.005, 0.003};
  return pmf;
}

std::vector<DetectionRecord> TrackedDetectionStream(
    const StreamScenario& scenario, int rho_track,
    const std::vector<double>& multiplicity_pmf, std::uint64_t seed) {
  if (rho_track < 1) {
    throw std::invalid_argument("rho_track must be >= 1");
  }
  if (scenario.frames_per_tc < 1) {
    throw std::invalid_argument("need at least one frame per TC");
  }
  NoiseSampler sampler(seed);
  std::vector<DetectionRecord> out;
  std::int64_t next_id = 1;  // never reused across the whole stream
  for (std::size_t tc = 0; tc < scenario.per_tc_individuals.size(); ++tc) {
    DetectionRecord rec;
    rec.aw_index = static_cast<std::int64_t>(tc);
    FrameDetections frame;
    for (const ScenarioIndividual& ind : scenario.per_tc_individuals[tc]) {
      // Inverse-CDF sample of the multiplicity, truncated at rho_track.
      const double u = sampler.Uniform();
      double cum = 0.0;
      int m = 1;
      for (std::size_t i = 0; i < multiplicity_pmf.size(); ++i) {
        cum += multiplicity_pmf[i];
        if (u <= cum) {
          m = static_cast<int>(i) + 1;
          break;
        }
        m = static_cast<int>(multiplicity_pmf.size());
      }
      m = std::min(m, rho_track);
      for (int i = 0; i < m; ++i) {
        frame.push_back({next_id++, ind.object_type, ind.value});
      }
    }
    rec.frames.assign(static_cast<std::size_t>(scenario.frames_per_tc), frame);
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

std::vector<std::string> Tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' ||
        ch == ')' || ch == ',') {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
      if (ch == '(' || ch == ')') {
        tokens.push_back(std::string(1, ch));
      }
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

double ParseNumber(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("expected a number for ") + what);
  }
}

CompareOp ParseOp(const std::string& tok) {
  if (tok == "<") return CompareOp::kLt;
  if (tok == "<=") return CompareOp::kLe;
  if (tok == ">") return CompareOp::kGt;
  if (tok == ">=") return CompareOp::kGe;
  if (tok == "=" || tok == "==") return CompareOp::kEq;
  if (tok == "!=") return CompareOp::kNe;
  throw std::invalid_argument("unknown comparison operator: " + tok);
}

}  // namespace

QuerySpec ParseQueryText(const std::string& text) {
  const std::vector<std::string> tokens = Tokenize(text);
  std::size_t i = 0;
  auto need = [&](const char* what) -> const std::string& {
    if (i >= tokens.size()) {
      throw std::invalid_argument(std::string("query text ends before ") + what);
    }
    return tokens[i];
  };
  auto expect = [&](const char* kw) {
    if (Upper(need(kw)) != kw) {
      throw std::invalid_argument(std::string("expected ") + kw + " near " + tokens[i]);
    }
    ++i;
  };

  QuerySpec spec;
  const std::string agg = Upper(need("aggregate"));
  if (agg == "COUNT") spec.aggregate = Aggregate::kCount;
  else if (agg == "SUM") spec.aggregate = Aggregate::kSum;
  else if (agg == "AVG") spec.aggregate = Aggregate::kAvg;
  else throw std::invalid_argument("unknown aggregate: " + tokens[i]);
  ++i;

  expect("OVER");
  ++i;  // stream name, recorded nowhere: there is a single stream per node

  if (i < tokens.size() && Upper(tokens[i]) == "WHERE") {
    ++i;
    bool first = true;
    while (true) {
      if (!first) {
        if (i >= tokens.size() || Upper(tokens[i]) != "AND") break;
        ++i;
      }
      first = false;
      const std::string attr = need("attribute");
      ++i;
      if (attr == "objectType") {
        expect("IN");
        expect("(");
        while (Upper(need("object type list")) != ")") {
          spec.object_types.push_back(tokens[i]);
          ++i;
        }
        expect(")");
      } else {
        Comparison c;
        c.attribute = attr;
        c.op = ParseOp(need("operator"));
        ++i;
        c.constant = ParseNumber(need("comparison constant"), "predicate");
        ++i;
        spec.predicate.push_back(c);
      }
    }
  }

  expect("WINDOWED");
  expect("BY");
  spec.aw_duration = static_cast<Seconds>(ParseNumber(need("window"), "WINDOWED BY"));
  ++i;
  expect("WITH");
  expect("SIGMA");
  spec.sigma_q = ParseNumber(need("sigma"), "WITH SIGMA");
  ++i;
  expect("MODE");
  const std::string mode = Upper(need("mode"));
  if (mode == "TRUSTED") spec.mode = QueryMode::kTrusted;
  else if (mode == "UNTRUSTED") spec.mode = QueryMode::kUntrusted;
  else throw std::invalid_argument("unknown mode: " + tokens[i]);
  ++i;

  while (i < tokens.size()) {
    const std::string kw = Upper(tokens[i]);
    if (kw == "SENSITIVITY") {
      ++i;
      spec.declared_s = ParseNumber(need("SENSITIVITY"), "SENSITIVITY");
      ++i;
    } else if (kw == "VMAX") {
      ++i;
      spec.v_max = ParseNumber(need("VMAX"), "VMAX");
      ++i;
    } else if (kw == "SCOPE") {
      ++i;
      const std::string scope = Upper(need("SCOPE"));
      if (scope == "LASTFRAME") {
        spec.scope = {false, 1};
        ++i;
      } else if (scope == "CUMULATIVE") {
        ++i;
        spec.scope.cumulative = true;
        spec.scope.k = static_cast<std::int64_t>(
            ParseNumber(need("cumulative frame count"), "SCOPE cumulative"));
        ++i;
      } else {
        throw std::invalid_argument("unknown scope: " + tokens[i]);
      }
    } else {
      throw std::invalid_argument("unexpected token: " + tokens[i]);
    }
  }
  return spec;
}

std::string FormatCloudReleasesCsv(const std::vector<CloudRelease>& releases) {
  std::ostringstream out;
  out << "locality,query,containerIdx,node,value,sigma\n";
  char buf[64];
  for (const CloudRelease& r : releases) {
    out << r.locality << ',' << r.query << ',' << r.release.container_index << ',';
    if (r.release.is_shadow) {
      out << "shadow,";
    } else {
      out << 'd' << r.release.node.depth << 'p' << r.release.node.pos << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.10g", r.release.noisy_value);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.10g", r.release.sigma);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace edgedp
