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

#ifndef TOPKDUEL_ACQUISITION_H_
#define TOPKDUEL_ACQUISITION_H_

#include <span>
#include <vector>

#include "topkduel/pair_stats.h"
#include "topkduel/thurstone.h"

namespace topkduel {

// Alternatives ordered by descending value; ties go to the lower index.
std::vector<int> rank_descending(std::span<const double> values);

// The k alternatives with the highest values, as ascending indices.
std::vector<int> top_k_indices(std::span<const double> values, int k);

// Separating constant between the k-th and (k+1)-th ranked posterior means,
// weighted by the opposite standard deviation. Requires 1 <= k < K.
double threshold_c(const ScorePosterior& posterior, int k);

// Per-alternative log tail probabilities whose sum is log APCS: selected
// alternatives contribute log P(S > c), the rest log P(S < c).
std::vector<double> apcs_log_factors(const ScorePosterior& posterior,
                                     std::span<const int> selection, double c);

double apcs(const ScorePosterior& posterior, std::span<const int> selection,
            double c);

// Variances after one more sample of `pair`: only alternatives pair.first and
// pair.second change, each losing sigma^2 / (n (n + 1)) from the shared term.
// `pair_sigma` is indexed by pair_index().
ScorePosterior posterior_after_sample(const ScorePosterior& posterior,
                                      std::span<const double> pair_sigma,
                                      const StatsTable& table, PairKey pair);

std::vector<double> aepcs_log_factors(const ScorePosterior& posterior,
                                      std::span<const double> pair_sigma,
                                      const StatsTable& table,
                                      std::span<const int> selection,
                                      PairKey pair, double c);

double aepcs(const ScorePosterior& posterior,
             std::span<const double> pair_sigma, const StatsTable& table,
             std::span<const int> selection, PairKey pair, double c);

struct AcquisitionChoice {
  PairKey pair;
  double log_aepcs = 0.0;
};

// Argmax of AEPCS over all pairs in O(K^2): the base factor product is
// computed once and each candidate only swaps its two affected factors.
// Ties resolve to the lexicographically smallest pair.
AcquisitionChoice best_aepcs_pair(const ScorePosterior& posterior,
                                  std::span<const double> pair_sigma,
                                  const StatsTable& table,
                                  std::span<const int> selection, double c);

// Sample standard deviations of every pair, indexed by pair_index().
std::vector<double> sample_sigmas(const StatsTable& table);

}  // namespace topkduel

#endif  // TOPKDUEL_ACQUISITION_H_
