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

#include "topkduel/policy.h"

#include <numeric>
#include <stdexcept>
#include <string>

namespace topkduel {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kUniform: return "uniform";
    case Method::kPocbam: return "pocbam";
    case Method::kMlPocbam: return "ml-pocbam";
    case Method::kHybrid: return "hybrid";
    case Method::kSelectTop: return "select-top";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kUniform, Method::kPocbam, Method::kMlPocbam,
                   Method::kHybrid, Method::kSelectTop}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

void PolicyConfig::validate() const {
  const auto fail = [](const std::string& what) {
    throw std::invalid_argument("policy config: " + what);
  };
  if (num_alternatives < 2) fail("K must be at least 2");
  if (select < 1 || select > num_alternatives) fail("k must be in [1, K]");
  if (method == Method::kSelectTop) {
    if (nu < 1) fail("nu must be at least 1");
    return;
  }
  if (method != Method::kUniform && select >= num_alternatives) {
    fail("k must be below K for AEPCS-based methods");
  }
  const int min_warmup = method == Method::kUniform ? 1 : 2;
  if (warmup < min_warmup) {
    fail("n0 must be at least " + std::to_string(min_warmup));
  }
  const std::int64_t needed =
      static_cast<std::int64_t>(warmup) * num_pairs(num_alternatives);
  if (budget < needed) {
    fail("budget " + std::to_string(budget) + " is below the warm-up total " +
         std::to_string(needed));
  }
  if (refit_interval < 1) fail("refit interval must be at least 1");
}

AcquisitionChoice ml_pocbam_choice(const StatsTable& table,
                                   const ThurstoneParams& params, int k) {
  const ScorePosterior post = score_posterior_model(params, table);
  const std::vector<int> selection = top_k_indices(post.mean, k);
  const double c = threshold_c(post, k);
  return best_aepcs_pair(post, params.sigma, table, selection, c);
}

AcquisitionChoice pocbam_choice(const StatsTable& table, int k) {
  const ScorePosterior post = score_posterior_independent(table);
  const std::vector<int> selection = top_k_indices(post.mean, k);
  const double c = threshold_c(post, k);
  const std::vector<double> sigmas = sample_sigmas(table);
  return best_aepcs_pair(post, sigmas, table, selection, c);
}

Policy::Policy(PolicyConfig config)
    : config_(std::move(config)),
      table_(config_.num_alternatives),
      pairs_(all_pairs(config_.num_alternatives)) {
  config_.validate();
  if (config_.method == Method::kSelectTop) {
    schedule_ = top_schedule(config_.num_alternatives, config_.select,
                             config_.nu, Rng(config_.seed));
    phase_ = schedule_.done() ? Phase::kFinished : Phase::kAdaptive;
  }
}

bool Policy::model_based() const {
  return config_.method == Method::kMlPocbam ||
         config_.method == Method::kHybrid;
}

std::int64_t Policy::warmup_total() const {
  return static_cast<std::int64_t>(config_.warmup) * pairs_.size();
}

void Policy::update_phase() {
  if (config_.method == Method::kSelectTop) {
    phase_ = schedule_.done() ? Phase::kFinished : Phase::kAdaptive;
    return;
  }
  const std::int64_t total = table_.total_count();
  if (total >= config_.budget) {
    phase_ = Phase::kFinished;
  } else if (total >= warmup_total()) {
    phase_ = Phase::kAdaptive;
  } else {
    phase_ = Phase::kWarmUp;
  }
}

const ThurstoneParams& Policy::ensure_fit(bool fresh) {
  const std::int64_t total = table_.total_count();
  const bool stale = !params_ || total - fit_stamp_ >= config_.refit_interval ||
                     (fresh && total != fit_stamp_);
  if (stale) {
    const ThurstoneParams start = params_ ? *params_ : init_params(table_);
    FitResult fit = fit_mle(table_, start, config_.fit);
    params_ = std::move(fit.params);
    last_fit_ = std::move(fit.report);
    fit_stamp_ = total;
  }
  return *params_;
}

Comparison Policy::adaptive_pair() {
  const int k = config_.select;
  switch (config_.method) {
    case Method::kUniform: {
      const PairKey p = pairs_[table_.total_count() % pairs_.size()];
      return {p.first, p.second};
    }
    case Method::kPocbam: {
      const PairKey p = pocbam_choice(table_, k).pair;
      return {p.first, p.second};
    }
    case Method::kMlPocbam: {
      const PairKey p = ml_pocbam_choice(table_, ensure_fit(false), k).pair;
      return {p.first, p.second};
    }
    case Method::kHybrid: {
      const ThurstoneParams& params = ensure_fit(false);
      const double ii = intransitivity_index(
          score_posterior_independent(table_),
          score_posterior_model(params, table_));
      last_gate_ii_ = ii;
      const PairKey p = ii <= config_.ii_threshold
                            ? ml_pocbam_choice(table_, params, k).pair
                            : pocbam_choice(table_, k).pair;
      return {p.first, p.second};
    }
    case Method::kSelectTop:
      break;
  }
  throw std::logic_error("unreachable policy method");
}

Comparison Policy::next_pair() {
  if (phase_ == Phase::kFinished) {
    throw std::logic_error("policy has exhausted its budget");
  }
  if (pending_) return *pending_;
  Comparison next;
  if (config_.method == Method::kSelectTop) {
    next = schedule_.request();
  } else if (phase_ == Phase::kWarmUp) {
    const PairKey p = pairs_[table_.total_count() % pairs_.size()];
    next = {p.first, p.second};
  } else {
    next = adaptive_pair();
  }
  pending_ = next;
  return next;
}

void Policy::observe(Comparison pair, double result) {
  if (!pending_ || !(*pending_ == pair)) {
    throw std::logic_error("observed pair (" + std::to_string(pair.first) +
                           "," + std::to_string(pair.second) +
                           ") was not the pending request");
  }
  pending_.reset();
  table_.record(pair.first, pair.second, result);
  if (config_.method == Method::kSelectTop) schedule_.supply(result);
  update_phase();
}

std::vector<int> Policy::current_selection() {
  const int k = config_.select;
  if (config_.method == Method::kSelectTop) {
    if (!schedule_.done()) {
      throw std::logic_error("tournament has not finished");
    }
    std::vector<int> chosen = schedule_.outcome();
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }
  if (table_.min_count() < 1) {
    throw std::domain_error("every pair needs a sample before selecting");
  }
  if (model_based() && table_.min_count() >= 2) {
    const ThurstoneParams& params = ensure_fit(true);
    const ScorePosterior model = score_posterior_model(params, table_);
    if (config_.method == Method::kHybrid) {
      const ScorePosterior indep = score_posterior_independent(table_);
      const double ii = intransitivity_index(indep, model);
      last_gate_ii_ = ii;
      if (ii > config_.ii_threshold) return top_k_indices(indep.mean, k);
    }
    return top_k_indices(model.mean, k);
  }
  // Sample-mean Borda ranking; also the model-based fallback before every
  // pair has the two samples a fit needs.
  return top_k_indices(table_.borda_estimates(), k);
}

std::optional<double> Policy::intransitivity() {
  if (!model_based() || table_.min_count() < 2) return std::nullopt;
  const ThurstoneParams& params = ensure_fit(true);
  return intransitivity_index(score_posterior_independent(table_),
                              score_posterior_model(params, table_));
}

}  // namespace topkduel
