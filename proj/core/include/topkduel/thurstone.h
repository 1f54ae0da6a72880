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

#ifndef TOPKDUEL_THURSTONE_H_
#define TOPKDUEL_THURSTONE_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "topkduel/pair_stats.h"

namespace topkduel {

// Latent-quality model: outcome of (i, j) ~ N(gamma[i] - gamma[j], sigma_ij^2).
// sigma holds one entry per canonical pair, indexed by pair_index().
struct ThurstoneParams {
  std::vector<double> gamma;
  std::vector<double> sigma;

  int size() const { return static_cast<int>(gamma.size()); }
  double pair_sigma(int i, int j) const;
};

// Gaussian approximation to each alternative's Borda score.
struct ScorePosterior {
  std::vector<double> mean;
  std::vector<double> var;

  int size() const { return static_cast<int>(mean.size()); }
};

struct FitConfig {
  double gradient_tolerance = 1e-6;  // infinity norm
  int max_iterations = 500;
  double shrink = 0.5;               // backtracking factor
  double sufficient_increase = 1e-4;
};

struct FitReport {
  bool converged = false;
  int iterations = 0;
  double final_gradient_norm = 0.0;
  double log_likelihood = 0.0;
  // Log-likelihood at the start and after every accepted iteration.
  std::vector<double> trace;
};

struct FitResult {
  ThurstoneParams params;
  FitReport report;
};

struct LikelihoodGradient {
  // Full length K; entry 0 is the gauge coordinate and is not optimized.
  std::vector<double> gamma;
  // One entry per canonical pair.
  std::vector<double> sigma;
};

// Raised when the likelihood cannot be evaluated at the supplied parameters.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& parameter, const std::string& what)
      : std::runtime_error(what + " (parameter " + parameter + ")"),
        parameter_(parameter) {}
  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

// Borda-based starting point, centred so gamma[0] == 0, with sample standard
// deviations for sigma. Every pair needs at least two samples.
ThurstoneParams init_params(const StatsTable& table);

// Log-likelihood of every recorded sample, computed from (n, mean, m2) per
// pair: sum_t (r - d)^2 = m2 + n (mean - d)^2.
double log_likelihood(const ThurstoneParams& params, const StatsTable& table);

LikelihoodGradient ll_gradient(const ThurstoneParams& params,
                               const StatsTable& table);

// Infinity norm over the free coordinates: gamma[1..K-1] and every sigma of
// a sampled pair that is not pinned at the floor with a negative slope.
double free_gradient_norm(const LikelihoodGradient& grad,
                          const ThurstoneParams& params,
                          const StatsTable& table);

// Maximum-likelihood fit from `init`. Throws FitError on non-finite input.
FitResult fit_mle(const StatsTable& table, const ThurstoneParams& init,
                  const FitConfig& config = {});

// mean_i = sum_j (gamma_i - gamma_j), var_i = sum_j sigma_ij^2 / n_ij.
ScorePosterior score_posterior_model(const ThurstoneParams& params,
                                     const StatsTable& table);

// mean_i = Borda estimate, var_i = sum_j s_ij^2 / n_ij from sample moments.
ScorePosterior score_posterior_independent(const StatsTable& table);

// KL(N(p_mean, p_var) || N(q_mean, q_var)).
double gaussian_kl(double p_mean, double p_var, double q_mean, double q_var);

// 1 - exp(-(1/2K) sum_i symmetric KL) between observed (independent) and
// predicted (model) score posteriors. Always in [0, 1).
double intransitivity_index(const ScorePosterior& observed,
                            const ScorePosterior& predicted);

}  // namespace topkduel

#endif  // TOPKDUEL_THURSTONE_H_
