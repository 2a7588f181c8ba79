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

#include "edgedp/toeplitz.h"

#include <cmath>
#include <stdexcept>

namespace edgedp {

std::vector<double> ToeplitzMechanism::Coefficients(std::int64_t t_max) {
  if (t_max < 1) {
    throw std::invalid_argument("t_max must be >= 1");
  }
  std::vector<double> c(static_cast<std::size_t>(t_max));
  c[0] = 1.0;
  for (std::int64_t k = 1; k < t_max; ++k) {
    c[k] = c[k - 1] * static_cast<double>(2 * k - 1) /
           static_cast<double>(2 * k);
  }
  return c;
}

double ToeplitzMechanism::CalibrateSigma(double delta_s, double epsilon,
                                         double dp_delta, std::int64_t t_max) {
  if (delta_s <= 0.0 || epsilon <= 0.0 || dp_delta <= 0.0 || dp_delta >= 1.0) {
    throw std::invalid_argument("need delta_s > 0, epsilon > 0, dp_delta in (0,1)");
  }
  const std::vector<double> c = Coefficients(t_max);
  double col_sq = 0.0;
  for (double v : c) {
    col_sq += v * v;
  }
  return delta_s * std::sqrt(col_sq) * std::sqrt(2.0 * std::log(1.25 / dp_delta)) /
         epsilon;
}

ToeplitzMechanism::ToeplitzMechanism(std::int64_t t_max, double sigma_g,
                                     std::uint64_t seed)
    : t_max_(t_max), sigma_g_(sigma_g), sampler_(seed) {
  if (sigma_g < 0.0) {
    throw std::invalid_argument("sigma_g must be non-negative");
  }
  coeffs_ = Coefficients(t_max);
  noise_.reserve(static_cast<std::size_t>(t_max));
}

double ToeplitzMechanism::Release(double y) {
  if (step_ >= t_max_) {
    throw std::logic_error("release horizon t_max exhausted");
  }
  prefix_ += y;
  noise_.push_back(sampler_.Gaussian(sigma_g_));
  const std::int64_t t = step_++;
  double correlated = 0.0;
  for (std::int64_t j = 0; j <= t; ++j) {
    correlated += coeffs_[static_cast<std::size_t>(t - j)] *
                  noise_[static_cast<std::size_t>(j)];
  }
  return prefix_ + correlated;
}

double ToeplitzMechanism::MarginalVariance(std::int64_t t) const {
  if (t < 0 || t >= t_max_) {
    throw std::invalid_argument("step out of range");
  }
  double sum = 0.0;
  for (std::int64_t j = 0; j <= t; ++j) {
    sum += coeffs_[static_cast<std::size_t>(j)] * coeffs_[static_cast<std::size_t>(j)];
  }
  return sigma_g_ * sigma_g_ * sum;
}

double ToeplitzMechanism::MarginalStd(std::int64_t t) const {
  return std::sqrt(MarginalVariance(t));
}

}  // namespace edgedp
