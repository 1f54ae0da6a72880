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

#ifndef TOPKDUEL_HARNESS_H_
#define TOPKDUEL_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topkduel/environment.h"
#include "topkduel/policy.h"

namespace topkduel {

struct MethodSpec {
  Method method = Method::kMlPocbam;
  std::vector<int> nu = {1};  // select-top sweep
  double ii_threshold = kDefaultIiThreshold;
};

struct EnvironmentSpec {
  enum class Kind { kThurstone, kMatrix };
  Kind kind = Kind::kThurstone;
  ThurstoneGenConfig thurstone;
  std::string matrix_path;
};

struct BenchmarkConfig {
  int num_alternatives = 10;      // K
  int select = 4;                 // k
  std::int64_t budget = 1000;     // N
  int warmup = kDefaultWarmup;    // n0
  int replications = 500;         // R
  std::vector<MethodSpec> methods;
  EnvironmentSpec environment;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> checkpoints;  // ascending; always ends at N
  int refit_interval = 1;
  std::vector<double> d_values;   // perturbation sweep for ii_trace
  int threads = 0;                // 0: hardware concurrency

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Reads the JSON form. Keys mirror the field names: K, k, budget, n0,
// replications, methods, environment, seed, checkpoints or
// checkpoint_interval, refit_interval, d_values, threads.
BenchmarkConfig parse_benchmark_config(const std::string& json_text);
BenchmarkConfig load_benchmark_config(const std::string& path);

// Generator settings alone: K, gamma_range, variance_range, gamma_overrides, d.
ThurstoneGenConfig parse_generator_config(const std::string& json_text);

// One benchmark observation.
struct RunRecord {
  std::string method;
  int replication = 0;
  std::int64_t step = 0;
  bool correct = false;
  std::optional<double> ii;
  std::int64_t pairs_sampled = 0;  // distinct pairs with at least one sample

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SuccessRow {
  std::string method;
  std::int64_t step = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_samples = 0.0;
};

struct BenchmarkResult {
  std::vector<RunRecord> records;
  std::vector<SuccessRow> table;
};

struct IiTraceRow {
  double d = 0.0;
  std::int64_t step = 0;
  double mean_ii = 0.0;
};

// Label used in outputs: the method name, with "/nu=<v>" for select-top.
std::string run_label(Method method, int nu);

// Builds the replication's environment; identical for every method.
Environment make_environment(const BenchmarkConfig& config, int replication);

// Runs one method (at one nu for select-top) on one replication.
std::vector<RunRecord> run_replication(const BenchmarkConfig& config,
                                       const MethodSpec& method, int nu,
                                       int replication);

// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::int64_t successes,
                                          std::int64_t trials);

BenchmarkResult run_benchmark(const BenchmarkConfig& config);

// Mean intransitivity index per (d, checkpoint) under ML-POCBAm sampling.
std::vector<IiTraceRow> ii_trace(const BenchmarkConfig& config);

// CSV emission. Doubles are written with 17 significant digits.
std::string format_records_csv(const std::vector<RunRecord>& records);
std::string format_success_csv(const std::vector<SuccessRow>& rows);
std::string format_ii_trace_csv(const std::vector<IiTraceRow>& rows);
std::vector<RunRecord> parse_records_csv(const std::string& text);
std::vector<SuccessRow> parse_success_csv(const std::string& text);

// Writes text to path; throws IoError.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace topkduel

#endif  // TOPKDUEL_HARNESS_H_
