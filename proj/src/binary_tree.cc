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

#include "edgedp/binary_tree.h"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "edgedp/core_model.h"

namespace edgedp {

std::int64_t TreeNode::Span(int height) const {
  return std::int64_t{1} << (height - depth);
}

std::int64_t TreeNode::FirstLeaf(int height) const {
  return pos * Span(height) + 1;
}

std::int64_t TreeNode::LastLeaf(int height) const {
  return (pos + 1) * Span(height);
}

BinaryTree::BinaryTree(std::int64_t n, NoiseSpec noise, std::uint64_t seed)
    : n_(n), noise_(noise), sampler_(seed) {
  if (n < 2 || !IsPowerOfTwo(n)) {
    throw std::invalid_argument("N must be a power of two >= 2");
  }
  height_ = std::bit_width(static_cast<std::uint64_t>(n)) - 1;
  partial_.assign(height_ + 1, 0.0);
  open_leaves_.assign(height_ + 1, 0);
}

std::vector<ReleaseRecord> BinaryTree::AddLeaf(double y) {
  if (leaf_index_ >= n_) {
    throw std::logic_error("container is full; call ContainerEnd() first");
  }
  const std::int64_t t = ++leaf_index_;  // 1-based position of this leaf
  for (int j = 0; j <= height_; ++j) {
    partial_[j] += y;
    open_leaves_[j] += 1;
  }
  if (t > n_ / 2) {
    shadow_sum_ += y;
  }
  const double sigma = std::sqrt(noise_.Variance());
  std::vector<ReleaseRecord> out;
  // Block of size 2^j completes at leaf t exactly when 2^j divides t.
  const int completed = std::countr_zero(static_cast<std::uint64_t>(t));
  out.reserve(completed + 1);
  for (int j = 0; j <= completed; ++j) {
    ReleaseRecord rec;
    rec.container_index = container_index_;
    rec.node = TreeNode{height_ - j, (t >> j) - 1};
    rec.noisy_value = partial_[j] + sampler_.Sample(noise_);
    rec.sigma = sigma;
    out.push_back(rec);
    partial_[j] = 0.0;
    open_leaves_[j] = 0;
  }
  return out;
}

ReleaseRecord BinaryTree::ContainerEnd() {
  if (leaf_index_ != n_) {
    throw std::logic_error("container still has open leaves");
  }
  ReleaseRecord rec;
  rec.container_index = container_index_;
  rec.is_shadow = true;
  rec.noisy_value = shadow_sum_ + sampler_.Sample(noise_);
  rec.sigma = std::sqrt(noise_.Variance());
  // Destroy all raw state before the next container starts.
  partial_.assign(height_ + 1, 0.0);
  open_leaves_.assign(height_ + 1, 0);
  shadow_sum_ = 0.0;
  leaf_index_ = 0;
  ++container_index_;
  return rec;
}

int BinaryTree::OpenPartialCount() const {
  int count = 0;
  for (std::int64_t open : open_leaves_) {
    if (open > 0) ++count;
  }
  return count;
}

std::int64_t DecompositionBound(std::int64_t n) {
  if (n < 2 || !IsPowerOfTwo(n)) {
    throw std::invalid_argument("N must be a power of two >= 2");
  }
  if (n == 2) return 1;
  const int h = std::bit_width(static_cast<std::uint64_t>(n)) - 1;
  return 2 * (h - 1);
}

CanonicalDecomposition CanonicalDecompose(std::int64_t i, std::int64_t j,
                                          std::int64_t n) {
  if (n < 2 || !IsPowerOfTwo(n)) {
    throw std::invalid_argument("N must be a power of two >= 2");
  }
  if (i < 1 || j < i || j > n) {
    throw std::invalid_argument("interval out of range");
  }
  const int h = std::bit_width(static_cast<std::uint64_t>(n)) - 1;
  CanonicalDecomposition out;
  out.first = i;
  out.last = j;
  std::int64_t cur = i;
  while (cur <= j) {
    // Largest aligned block starting at cur that stays inside [cur, j].
    std::int64_t span = 1;
    while ((cur - 1) % (2 * span) == 0 && cur + 2 * span - 1 <= j) {
      span *= 2;
    }
    const int depth = h - std::countr_zero(static_cast<std::uint64_t>(span));
    out.nodes.push_back(TreeNode{depth, (cur - 1) / span});
    cur += span;
  }
  return out;
}

ReleaseStore::ReleaseStore(std::int64_t n) : n_(n) {
  if (n < 2 || !IsPowerOfTwo(n)) {
    throw std::invalid_argument("N must be a power of two >= 2");
  }
  height_ = std::bit_width(static_cast<std::uint64_t>(n)) - 1;
}

void ReleaseStore::Ingest(const ReleaseRecord& record) {
  ContainerReleases& c = containers_[record.container_index];
  if (record.is_shadow) {
    c.shadow = record;
    return;
  }
  c.nodes[record.node] = record;
  const std::int64_t end =
      record.container_index * n_ + record.node.LastLeaf(height_);
  if (end > max_released_aw_) {
    max_released_aw_ = end;
  }
}

void ReleaseStore::IngestAll(const std::vector<ReleaseRecord>& records) {
  for (const ReleaseRecord& r : records) {
    Ingest(r);
  }
}

const ReleaseRecord* ReleaseStore::FindNode(std::int64_t container,
                                            const TreeNode& node) const {
  auto cit = containers_.find(container);
  if (cit == containers_.end()) return nullptr;
  auto nit = cit->second.nodes.find(node);
  return nit == cit->second.nodes.end() ? nullptr : &nit->second;
}

const ReleaseRecord* ReleaseStore::FindShadow(std::int64_t container) const {
  auto cit = containers_.find(container);
  if (cit == containers_.end() || !cit->second.shadow.has_value()) {
    return nullptr;
  }
  return &*cit->second.shadow;
}

void ReleaseStore::AccumulateLocal(std::int64_t container, std::int64_t i,
                                   std::int64_t j, IntervalEstimate* acc) const {
  for (const TreeNode& node : CanonicalDecompose(i, j, n_).nodes) {
    const ReleaseRecord* rec = FindNode(container, node);
    if (rec == nullptr) {
      throw std::out_of_range("interval requires an unreleased tree node");
    }
    acc->estimate += rec->noisy_value;
    acc->variance_bound += rec->sigma * rec->sigma;
    acc->releases_used += 1;
  }
}

IntervalEstimate ReleaseStore::EstimateInterval(std::int64_t first,
                                                std::int64_t last) const {
  if (first < 1 || last < first) {
    throw std::invalid_argument("need a contiguous AW interval of length >= 1");
  }
  if (last > max_released_aw_) {
    throw std::out_of_range("interval extends past released data");
  }
  const std::int64_t half = n_ / 2;
  const std::int64_t len = last - first + 1;
  IntervalEstimate acc;

  if (len <= half) {
    const std::int64_t ca = (first - 1) / n_;
    const std::int64_t cb = (last - 1) / n_;
    const std::int64_t la = (first - 1) % n_ + 1;
    const std::int64_t lb = (last - 1) % n_ + 1;
    if (ca == cb) {
      AccumulateLocal(ca, la, lb, &acc);
    } else {
      // Straddles one boundary: suffix of ca plus prefix of ca+1.
      AccumulateLocal(ca, la, n_, &acc);
      AccumulateLocal(cb, 1, lb, &acc);
    }
    return acc;
  }

  // Long interval: aligned N/2 blocks plus residual pieces. Block m covers
  // absolute AWs [m*half + 1, (m+1)*half]; even m is a container's first
  // half, odd m its second half (shadow bridge preferred).
  std::int64_t m0 = (first - 1 + half - 1) / half;
  std::int64_t m1 = last / half;  // blocks m0 .. m1-1 are fully covered
  if (m0 >= m1) {
    // No aligned block fits (possible only for len < N); fall back to the
    // short-interval path pieces around the single boundary inside I.
    const std::int64_t ca = (first - 1) / n_;
    const std::int64_t cb = (last - 1) / n_;
    const std::int64_t la = (first - 1) % n_ + 1;
    const std::int64_t lb = (last - 1) % n_ + 1;
    if (ca == cb) {
      AccumulateLocal(ca, la, lb, &acc);
    } else {
      AccumulateLocal(ca, la, n_, &acc);
      AccumulateLocal(cb, 1, lb, &acc);
    }
    return acc;
  }
  if (first <= m0 * half) {
    const std::int64_t ca = (first - 1) / n_;
    AccumulateLocal(ca, (first - 1) % n_ + 1, (m0 * half - 1) % n_ + 1, &acc);
  }
  for (std::int64_t m = m0; m < m1; ++m) {
    const std::int64_t container = m / 2;
    if (m % 2 == 0) {
      const ReleaseRecord* rec = FindNode(container, TreeNode{1, 0});
      if (rec == nullptr) {
        throw std::out_of_range("interval requires an unreleased half block");
      }
      acc.estimate += rec->noisy_value;
      acc.variance_bound += rec->sigma * rec->sigma;
      acc.releases_used += 1;
    } else {
      // Either release covers (N/2, N]; ties break toward the shadow.
      const ReleaseRecord* rec = FindShadow(container);
      if (rec == nullptr) rec = FindNode(container, TreeNode{1, 1});
      if (rec == nullptr) {
        throw std::out_of_range("interval requires an unreleased half block");
      }
      acc.estimate += rec->noisy_value;
      acc.variance_bound += rec->sigma * rec->sigma;
      acc.releases_used += 1;
    }
  }
  if (last >= m1 * half + 1) {
    const std::int64_t cb = (last - 1) / n_;
    AccumulateLocal(cb, (m1 * half) % n_ + 1, (last - 1) % n_ + 1, &acc);
  }
  return acc;
}

std::string FormatReleaseLogCsv(const std::vector<ReleaseRecord>& records) {
  std::ostringstream out;
  out << "containerIndex,nodeDepth,nodePos,noisyValue,sigma\n";
  char buf[64];
  for (const ReleaseRecord& r : records) {
    out << r.container_index << ',';
    if (r.is_shadow) {
      out << "shadow,shadow,";
    } else {
      out << r.node.depth << ',' << r.node.pos << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.10g", r.noisy_value);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.10g", r.sigma);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace edgedp
