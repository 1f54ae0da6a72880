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

#ifndef TOPKDUEL_POLICY_H_
#define TOPKDUEL_POLICY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topkduel/acquisition.h"
#include "topkduel/pair_stats.h"
#include "topkduel/select_top.h"
#include "topkduel/thurstone.h"

namespace topkduel {

enum class Method { kUniform, kPocbam, kMlPocbam, kHybrid, kSelectTop };

std::string_view method_name(Method method);
// Accepts "uniform", "pocbam", "ml-pocbam", "hybrid", "select-top".
std::optional<Method> parse_method(std::string_view name);

enum class Phase { kWarmUp, kAdaptive, kFinished };

inline constexpr double kDefaultIiThreshold = 0.17;
inline constexpr int kDefaultWarmup = 3;

struct PolicyConfig {
  Method method = Method::kMlPocbam;
  int num_alternatives = 10;
  int select = 4;                   // k
  std::int64_t budget = 1000;       // N; ignored by select-top
  int warmup = kDefaultWarmup;      // n0 samples per pair
  double ii_threshold = kDefaultIiThreshold;
  int refit_interval = 1;           // adaptive steps between likelihood fits
  int nu = 1;                       // select-top repetitions per match
  FitConfig fit;
  std::uint64_t seed = 0;           // policy-internal randomness

  void validate() const;
};

// Pair maximizing AEPCS under the fitted Thurstone posterior.
AcquisitionChoice ml_pocbam_choice(const StatsTable& table,
                                   const ThurstoneParams& params, int k);
// Pair maximizing AEPCS under the independent (sample-moment) posterior.
AcquisitionChoice pocbam_choice(const StatsTable& table, int k);

// Sequential sampling policy. Callers alternate next_pair() and observe();
// the policy owns its statistics table.
class Policy {
 public:
  explicit Policy(PolicyConfig config);

  Comparison next_pair();
  void observe(Comparison pair, double result);

  // Current best-k index set, ascending. May refit the likelihood model.
  std::vector<int> current_selection();

  // Intransitivity index between the independent and fitted posteriors, for
  // model-based methods once every pair has two samples.
  std::optional<double> intransitivity();

  Phase phase() const { return phase_; }
  const PolicyConfig& config() const { return config_; }
  const StatsTable& stats() const { return table_; }
  std::int64_t samples_taken() const { return table_.total_count(); }
  // Index at the most recent hybrid gate decision.
  std::optional<double> last_gate_ii() const { return last_gate_ii_; }
  const std::optional<ThurstoneParams>& fitted_params() const { return params_; }
  const std::optional<FitReport>& last_fit() const { return last_fit_; }

 private:
  bool model_based() const;
  std::int64_t warmup_total() const;
  void update_phase();
  // Refits when the cadence says so, or whenever the table changed if
  // `fresh` is set.
  const ThurstoneParams& ensure_fit(bool fresh);
  Comparison adaptive_pair();

  PolicyConfig config_;
  StatsTable table_;
  std::vector<PairKey> pairs_;
  Phase phase_ = Phase::kWarmUp;
  std::optional<Comparison> pending_;

  std::optional<ThurstoneParams> params_;
  std::optional<FitReport> last_fit_;
  std::int64_t fit_stamp_ = -1;  // total count at the last fit
  std::optional<double> last_gate_ii_;

  ComparisonSchedule schedule_;
};

}  // namespace topkduel

#endif  // TOPKDUEL_POLICY_H_
