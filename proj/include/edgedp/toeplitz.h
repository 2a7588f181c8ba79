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

#ifndef EDGEDP_TOEPLITZ_H_
#define EDGEDP_TOEPLITZ_H_

#include <cstdint>
#include <vector>

#include "edgedp/noise.h"

namespace edgedp {

// Correlated-noise continual release of prefix sums via the square-root
// factorization of the all-ones lower-triangular matrix A: with C the
// lower-triangular Toeplitz matrix built from c_0 = 1,
// c_k = c_{k-1} * (2k-1) / (2k), A = C*C holds exactly, and the mechanism
// M = B(Cy + z) with B = C releases Ay + Cz. The streaming form keeps one
// raw prefix accumulator plus the i.i.d. Gaussian draws z_0..z_t.
class ToeplitzMechanism {
 public:
  ToeplitzMechanism(std::int64_t t_max, double sigma_g, std::uint64_t seed);

  // Gaussian sigma for a target (epsilon, dp_delta) at sensitivity delta_s,
  // using the l2 column norm of C at t_max:
  //   sigma_g = delta_s * ||C||col2 * sqrt(2 ln(1.25/dp_delta)) / epsilon.
  static double CalibrateSigma(double delta_s, double epsilon, double dp_delta,
                               std::int64_t t_max);

  static std::vector<double> Coefficients(std::int64_t t_max);

  // Ingests y_t and returns the noisy prefix sum through step t.
  // Throws std::logic_error past t_max steps.
  double Release(double y);

  // Closed-form noise variance of the released prefix at step t (0-based):
  // sigma_g^2 * sum_{j<=t} c_j^2. Non-decreasing in t.
  double MarginalVariance(std::int64_t t) const;
  double MarginalStd(std::int64_t t) const;

  std::int64_t t_max() const { return t_max_; }
  std::int64_t step() const { return step_; }
  double sigma_g() const { return sigma_g_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  std::int64_t t_max_;
  double sigma_g_;
  std::vector<double> coeffs_;
  NoiseSampler sampler_;
  std::int64_t step_ = 0;
  double prefix_ = 0.0;        // exact running prefix sum
  std::vector<double> noise_;  // z_0..z_{step-1}
};

}  // namespace edgedp

#endif  // EDGEDP_TOEPLITZ_H_
