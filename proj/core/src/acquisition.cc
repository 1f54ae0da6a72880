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

#include "topkduel/acquisition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "topkduel/normal.h"

namespace topkduel {

namespace {

std::vector<char> membership(std::span<const int> selection, int k) {
  std::vector<char> in(k, 0);
  for (int idx : selection) {
    if (idx < 0 || idx >= k) {
      throw std::out_of_range("selection index " + std::to_string(idx) +
                              " out of range");
    }
    in[idx] = 1;
  }
  return in;
}

double log_factor(double mean, double var, double c, bool selected) {
  const double sd = std::sqrt(var);
  return selected ? log_normal_cdf((mean - c) / sd)
                  : log_normal_cdf((c - mean) / sd);
}

double shared_term_drop(std::span<const double> pair_sigma,
                        const StatsTable& table, PairKey pair) {
  const std::size_t idx = pair_index(pair.first, pair.second, table.size());
  const double n = static_cast<double>(table.at(idx).n);
  if (n < 1.0) {
    throw std::domain_error("candidate pair has no samples");
  }
  const double sigma = pair_sigma[idx];
  return sigma * sigma / (n * (n + 1.0));
}

PairKey canonical(PairKey pair) {
  if (pair.first == pair.second) {
    throw std::invalid_argument("candidate pair must join distinct alternatives");
  }
  if (pair.first > pair.second) std::swap(pair.first, pair.second);
  return pair;
}

}  // namespace

std::vector<int> rank_descending(std::span<const double> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  return order;
}

std::vector<int> top_k_indices(std::span<const double> values, int k) {
  if (k < 0 || k > static_cast<int>(values.size())) {
    throw std::invalid_argument("selection size " + std::to_string(k) +
                                " out of range");
  }
  std::vector<int> order = rank_descending(values);
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

double threshold_c(const ScorePosterior& posterior, int k) {
  if (k < 1 || k >= posterior.size()) {
    throw std::invalid_argument("threshold needs 1 <= k < K, got k=" +
                                std::to_string(k));
  }
  const std::vector<int> order = rank_descending(posterior.mean);
  const int upper = order[k - 1];
  const int lower = order[k];
  const double mu_k = posterior.mean[upper];
  const double mu_next = posterior.mean[lower];
  const double sd_k = std::sqrt(posterior.var[upper]);
  const double sd_next = std::sqrt(posterior.var[lower]);
  const double c = (sd_next * mu_k + sd_k * mu_next) / (sd_k + sd_next);
  // Keep the rounding error inside the bracketing means.
  return std::clamp(c, mu_next, mu_k);
}

std::vector<double> apcs_log_factors(const ScorePosterior& posterior,
                                     std::span<const int> selection,
                                     double c) {
  const int k = posterior.size();
  const std::vector<char> in = membership(selection, k);
  std::vector<double> factors(k);
  for (int i = 0; i < k; ++i) {
    factors[i] = log_factor(posterior.mean[i], posterior.var[i], c, in[i]);
  }
  return factors;
}

double apcs(const ScorePosterior& posterior, std::span<const int> selection,
            double c) {
  const std::vector<double> f = apcs_log_factors(posterior, selection, c);
  return std::exp(std::accumulate(f.begin(), f.end(), 0.0));
}

ScorePosterior posterior_after_sample(const ScorePosterior& posterior,
                                      std::span<const double> pair_sigma,
                                      const StatsTable& table, PairKey pair) {
  pair = canonical(pair);
  const double drop = shared_term_drop(pair_sigma, table, pair);
  ScorePosterior next = posterior;
  next.var[pair.first] -= drop;
  next.var[pair.second] -= drop;
  return next;
}

std::vector<double> aepcs_log_factors(const ScorePosterior& posterior,
                                      std::span<const double> pair_sigma,
                                      const StatsTable& table,
                                      std::span<const int> selection,
                                      PairKey pair, double c) {
  pair = canonical(pair);
  std::vector<double> factors = apcs_log_factors(posterior, selection, c);
  const ScorePosterior next =
      posterior_after_sample(posterior, pair_sigma, table, pair);
  const std::vector<char> in = membership(selection, posterior.size());
  for (int a : {pair.first, pair.second}) {
    factors[a] = log_factor(next.mean[a], next.var[a], c, in[a]);
  }
  return factors;
}

double aepcs(const ScorePosterior& posterior,
             std::span<const double> pair_sigma, const StatsTable& table,
             std::span<const int> selection, PairKey pair, double c) {
  const std::vector<double> f =
      aepcs_log_factors(posterior, pair_sigma, table, selection, pair, c);
  return std::exp(std::accumulate(f.begin(), f.end(), 0.0));
}

AcquisitionChoice best_aepcs_pair(const ScorePosterior& posterior,
                                  std::span<const double> pair_sigma,
                                  const StatsTable& table,
                                  std::span<const int> selection, double c) {
  const int k = posterior.size();
  const std::vector<char> in = membership(selection, k);
  const std::vector<double> base = apcs_log_factors(posterior, selection, c);
  const double total = std::accumulate(base.begin(), base.end(), 0.0);

  AcquisitionChoice best{{0, 1}, -std::numeric_limits<double>::infinity()};
  double best_gain = -std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j, ++idx) {
      const double n = static_cast<double>(table.at(idx).n);
      if (n < 1.0) throw std::domain_error("candidate pair has no samples");
      const double drop = pair_sigma[idx] * pair_sigma[idx] / (n * (n + 1.0));
      const double gain =
          (log_factor(posterior.mean[i], posterior.var[i] - drop, c, in[i]) -
           base[i]) +
          (log_factor(posterior.mean[j], posterior.var[j] - drop, c, in[j]) -
           base[j]);
      if (gain > best_gain) {
        best_gain = gain;
        best = {{i, j}, total + gain};
      }
    }
  }
  return best;
}

std::vector<double> sample_sigmas(const StatsTable& table) {
  const int k = table.size();
  std::vector<double> out(num_pairs(k));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) out[pair_index(i, j, k)] = table.stddev(i, j);
  }
  return out;
}

}  // namespace topkduel
