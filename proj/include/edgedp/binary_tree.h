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

#ifndef EDGEDP_BINARY_TREE_H_
#define EDGEDP_BINARY_TREE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgedp/noise.h"

namespace edgedp {

// Node of the complete binary tree over one container's N leaves.
// depth 0 is the root, depth log2(N) the leaves. Node (d, p) covers the
// 1-based leaf range [p * 2^(h-d) + 1, (p+1) * 2^(h-d)].
struct TreeNode {
  int depth = 0;
  std::int64_t pos = 0;

  std::int64_t FirstLeaf(int height) const;
  std::int64_t LastLeaf(int height) const;
  std::int64_t Span(int height) const;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
  friend auto operator<=>(const TreeNode&, const TreeNode&) = default;
};

struct ReleaseRecord {
  std::int64_t container_index = 0;
  // Shadow bridge releases cover the leaf range (N/2, N] and carry no tree
  // node; everything else is a tree node release.
  bool is_shadow = false;
  TreeNode node;
  double noisy_value = 0.0;
  double sigma = 0.0;
};

// Streaming continual-release state for one container of N leaves. Raw state
// is O(log N): one open partial sum per tree level plus the shadow sum.
class BinaryTree {
 public:
  BinaryTree(std::int64_t n, NoiseSpec noise, std::uint64_t seed);

  // Ingests the next leaf value and releases every node whose subtree just
  // became complete (always the trailing-zero count of the 1-based leaf
  // index, plus one). Leaves in the second half also accrue into the shadow
  // sum. Throws std::logic_error after N leaves until ContainerEnd().
  std::vector<ReleaseRecord> AddLeaf(double y);

  // Emits the shadow bridge over leaves (N/2, N], zeroes all raw state, and
  // advances to the next container. Throws std::logic_error before leaf N.
  ReleaseRecord ContainerEnd();

  std::int64_t n() const { return n_; }
  int height() const { return height_; }
  std::int64_t leaf_index() const { return leaf_index_; }
  std::int64_t container_index() const { return container_index_; }
  double shadow_sum() const { return shadow_sum_; }

  // Number of open (non-empty) partial sums; bounded by height()+1.
  int OpenPartialCount() const;

 private:
  std::int64_t n_;
  int height_;
  NoiseSpec noise_;
  NoiseSampler sampler_;
  std::int64_t leaf_index_ = 0;  // next leaf position, in [0, N)
  std::int64_t container_index_ = 0;
  // partial_[j] accumulates the currently open block of 2^j leaves;
  // open_leaves_[j] counts how many of its leaves have arrived.
  std::vector<double> partial_;
  std::vector<std::int64_t> open_leaves_;
  double shadow_sum_ = 0.0;
};

struct CanonicalDecomposition {
  std::int64_t first = 0;  // 1-based, inclusive
  std::int64_t last = 0;
  std::vector<TreeNode> nodes;
};

// V(N): the worst-case canonical decomposition size.
std::int64_t DecompositionBound(std::int64_t n);

// The unique minimal set of tree nodes whose leaf sets partition {i..j}.
// Greedy largest-aligned-block from the left. Prefixes [1, r] yield exactly
// popcount(r) nodes and suffixes [N-l+1, N] exactly popcount(l).
// Throws std::invalid_argument unless 1 <= i <= j <= N.
CanonicalDecomposition CanonicalDecompose(std::int64_t i, std::int64_t j,
                                          std::int64_t n);

struct IntervalEstimate {
  double estimate = 0.0;
  double variance_bound = 0.0;
  int releases_used = 0;
};

// Accumulates releases across containers and answers interval-sum queries
// over absolute AW indices (1-based; AW t lives in container (t-1)/N).
class ReleaseStore {
 public:
  explicit ReleaseStore(std::int64_t n);

  void Ingest(const ReleaseRecord& record);
  void IngestAll(const std::vector<ReleaseRecord>& records);

  // Interval-sum estimate over absolute AWs [first, last].
  //   short intervals (length <= N/2): canonical nodes of one container, or
  //     suffix + prefix when straddling a boundary;
  //   long intervals: aligned N/2 blocks (depth-1 node for a first half,
  //     shadow bridge for a second half, tree-node fallback) plus residual
  //     decompositions.
  // The variance bound is the summed variance of the releases actually used.
  // Throws std::invalid_argument on a malformed interval and
  // std::out_of_range when the interval extends past released data.
  IntervalEstimate EstimateInterval(std::int64_t first, std::int64_t last) const;

  // Highest absolute AW index covered by ingested tree releases.
  std::int64_t MaxReleasedAw() const { return max_released_aw_; }

  std::int64_t n() const { return n_; }

 private:
  struct ContainerReleases {
    std::map<TreeNode, ReleaseRecord> nodes;
    std::optional<ReleaseRecord> shadow;
  };

  const ReleaseRecord* FindNode(std::int64_t container, const TreeNode& node) const;
  const ReleaseRecord* FindShadow(std::int64_t container) const;
  // Sums the canonical decomposition of a container-local leaf interval.
  void AccumulateLocal(std::int64_t container, std::int64_t i, std::int64_t j,
                       IntervalEstimate* acc) const;

  std::int64_t n_;
  int height_;
  std::map<std::int64_t, ContainerReleases> containers_;
  std::int64_t max_released_aw_ = 0;
};

// CSV export of a release log: one row per release,
// (containerIndex, nodeDepth, nodePos|shadow, noisyValue, sigma).
std::string FormatReleaseLogCsv(const std::vector<ReleaseRecord>& records);

}  // namespace edgedp

#endif  // EDGEDP_BINARY_TREE_H_
