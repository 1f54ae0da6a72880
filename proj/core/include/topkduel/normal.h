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

#ifndef TOPKDUEL_NORMAL_H_
#define TOPKDUEL_NORMAL_H_

namespace topkduel {

// Standard normal CDF.
double normal_cdf(double z);

// log(normal_cdf(z)), accurate deep into the lower tail.
double log_normal_cdf(double z);

// Probability that the sum of n draws from N(gap, sigma^2) is positive:
// Phi(gap * sqrt(n) / sigma).
double win_probability_analysis(long n, double gap, double sigma);

}  // namespace topkduel

#endif  // TOPKDUEL_NORMAL_H_
