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

#include "edgedp/noise.h"

#include <cmath>
#include <stdexcept>

namespace edgedp {

double NoiseSpec::Variance() const {
  switch (kind) {
    case NoiseKind::kNone:
      return 0.0;
    case NoiseKind::kLaplace:
      return 2.0 * scale * scale;
    case NoiseKind::kGaussian:
      return scale * scale;
  }
  return 0.0;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveTrialSeed(std::uint64_t master_seed, std::uint64_t trial) {
  return SplitMix64(master_seed + trial + 1);
}

double NoiseSampler::Uniform() {
  // 53 random bits, centered in the bin so 0 and 1 are unreachable.
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t NoiseSampler::UniformInt(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("bound must be >= 1");
  }
  const std::uint64_t limit = ~0ULL - ~0ULL % bound;
  std::uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return v % bound;
}

double NoiseSampler::Laplace(double scale) {
  if (scale < 0.0) {
    throw std::invalid_argument("laplace scale must be non-negative");
  }
  if (scale == 0.0) {
    return 0.0;
  }
  const double u = Uniform() - 0.5;
  const double mag = std::log(1.0 - 2.0 * std::abs(u));
  return u < 0.0 ? scale * mag : -scale * mag;
}

double NoiseSampler::Gaussian(double sigma) {
  if (sigma < 0.0) {
    throw std::invalid_argument("gaussian sigma must be non-negative");
  }
  if (sigma == 0.0) {
    return 0.0;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  return sigma * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

double NoiseSampler::Sample(const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::kNone:
      return 0.0;
    case NoiseKind::kLaplace:
      return Laplace(spec.scale);
    case NoiseKind::kGaussian:
      return Gaussian(spec.scale);
  }
  return 0.0;
}

}  // namespace edgedp
