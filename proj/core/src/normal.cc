// Copyright 2026 The topkduel Authors
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

#include "topkduel/normal.h"

#include <cmath>
#include <stdexcept>

namespace topkduel {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kHalfLog2Pi = 0.91893853320467274178;
}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double log_normal_cdf(double z) {
  if (z > -20.0) {
    if (z > 0.0) return std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
    return std::log(0.5 * std::erfc(-z * kInvSqrt2));
  }
  // Mills-ratio expansion: Phi(z) ~ phi(z)/|z| * (1 - 1/z^2 + 3/z^4 - 15/z^6).
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - kHalfLog2Pi - std::log(-z) + std::log(series);
}

double win_probability_analysis(long n, double gap, double sigma) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  return normal_cdf(gap * std::sqrt(static_cast<double>(n)) / sigma);
}

}  // namespace topkduel
