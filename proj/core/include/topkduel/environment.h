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

#ifndef TOPKDUEL_ENVIRONMENT_H_
#define TOPKDUEL_ENVIRONMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "topkduel/rng.h"

namespace topkduel {

// Ground truth for one population: skew-symmetric pairwise means and
// symmetric pairwise variances (row-major K x K), plus the stream that
// draws outcomes.
class Environment {
 public:
  Environment(int k, std::vector<double> means, std::vector<double> variances,
              std::uint64_t sampling_seed);

  int size() const { return k_; }
  double mean(int i, int j) const { return means_[i * k_ + j]; }
  double variance(int i, int j) const { return variances_[i * k_ + j]; }
  const std::vector<double>& mean_matrix() const { return means_; }
  const std::vector<double>& variance_matrix() const { return variances_; }

  // Latent qualities when the environment came from the Thurstone generator;
  // empty otherwise.
  const std::vector<double>& latent_quality() const { return gamma_; }
  void set_latent_quality(std::vector<double> gamma) { gamma_ = std::move(gamma); }

  // One independent draw from N(mu_ij, sigma_ij^2).
  double sample(int i, int j);

  // Restarts the outcome stream.
  void reseed(std::uint64_t sampling_seed) { rng_ = Rng(sampling_seed); }

  // S_i = sum_j mu_ij.
  std::vector<double> borda_scores() const;

 private:
  int k_;
  std::vector<double> means_;
  std::vector<double> variances_;
  std::vector<double> gamma_;
  Rng rng_;
};

struct ThurstoneGenConfig {
  int num_alternatives = 10;
  double gamma_lo = 0.0;
  double gamma_hi = 1.0;
  double variance_lo = 0.0;
  double variance_hi = 1.0;
  std::map<int, double> gamma_overrides;
  double perturbation = 0.0;  // sd of additive noise on each pairwise mean

  void validate() const;
};

// mu_ij = gamma_i - gamma_j + eps_ij with eps_ij ~ N(0, d^2) drawn once per
// canonical pair, sigma_ij^2 ~ U(variance range). Deterministic in seed.
Environment generate_thurstone(const ThurstoneGenConfig& config,
                               std::uint64_t seed);

// Indices of the k largest true Borda scores (ties to the lower index),
// ascending.
std::vector<int> true_topk(const Environment& env, int k);

// Matrix CSV: "K=<int>", K rows of means, a blank line, K rows of variances.
void save_matrix_env(const Environment& env, const std::string& path);
std::string format_matrix_env(const Environment& env);

// Loads and validates a matrix CSV; means must be skew-symmetric within
// 1e-9 and are re-symmetrized exactly. Throws MatrixFormatError,
// MatrixShapeError, MatrixValueError or IoError.
Environment load_matrix_env(const std::string& path, std::uint64_t seed);
Environment parse_matrix_env(const std::string& text, std::uint64_t seed);

// Pairs (a, b) with a ranked above b by true Borda score but mu_ab < 0;
// negative entries in the upper triangle of the rank-ordered mean matrix.
int count_order_violations(const Environment& env);

// Ordered triples with mu_ij > 0, mu_jk > 0 and mu_ik < 0.
int count_intransitive_triples(const Environment& env);

}  // namespace topkduel

#endif  // TOPKDUEL_ENVIRONMENT_H_
