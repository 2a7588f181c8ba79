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

#ifndef EDGEDP_NOISE_H_
#define EDGEDP_NOISE_H_

#include <cstdint>
#include <random>

namespace edgedp {

enum class NoiseKind { kNone, kLaplace, kGaussian };

// scale is the Laplace scale b or the Gaussian standard deviation sigma,
// depending on kind. kNone releases exact values (test-only).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double scale = 0.0;

  double Variance() const;

  static NoiseSpec None() { return {NoiseKind::kNone, 0.0}; }
  static NoiseSpec Laplace(double b) { return {NoiseKind::kLaplace, b}; }
  static NoiseSpec Gaussian(double sigma) {
    return {NoiseKind::kGaussian, sigma};
  }
};

// One splitmix64 step. This is the documented seed-derivation primitive:
// trial i of a run with master seed s is seeded with SplitMix64(s + i + 1),
// which keeps trial streams independent of scheduling order.
std::uint64_t SplitMix64(std::uint64_t x);

std::uint64_t DeriveTrialSeed(std::uint64_t master_seed, std::uint64_t trial);

// Deterministic sampler. All distributions are derived from raw mt19937_64
// output with explicit arithmetic (no std::*_distribution), so a given seed
// yields the same stream on every platform.
class NoiseSampler {
 public:
  explicit NoiseSampler(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t NextU64() { return gen_(); }

  // Uniform on (0, 1), never returning an endpoint.
  double Uniform();

  // Uniform integer in [0, bound), bound >= 1, via rejection sampling.
  std::uint64_t UniformInt(std::uint64_t bound);

  double Laplace(double scale);    // inverse CDF
  double Gaussian(double sigma);   // Box-Muller

  double Sample(const NoiseSpec& spec);

 private:
  std::mt19937_64 gen_;
};

}  // namespace edgedp

#endif  // EDGEDP_NOISE_H_
