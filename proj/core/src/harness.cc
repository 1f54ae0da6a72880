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

#include "topkduel/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "topkduel/errors.h"

namespace topkduel {

namespace {

using nlohmann::json;

constexpr std::int64_t kDefaultCheckpointInterval = 50;
constexpr double kWilsonZ = 1.959963984540054;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ConfigError(where + item.key(), "unknown field");
    }
  }
}

template <typename T>
T get_field(const json& obj, const char* key, const std::string& field, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field, "has the wrong type");
  }
}

std::pair<double, double> get_range(const json& obj, const char* key,
                                    const std::string& field,
                                    std::pair<double, double> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(field, "must be a two-element numeric array");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

MethodSpec parse_method_spec(const json& item, std::size_t index) {
  const std::string field = "methods[" + std::to_string(index) + "]";
  MethodSpec spec;
  std::string name;
  if (item.is_string()) {
    name = item.get<std::string>();
  } else if (item.is_object()) {
    require_keys(item, field + ".", {"name", "nu", "ii_threshold"});
    if (!item.contains("name") || !item.at("name").is_string()) {
      throw ConfigError(field + ".name", "is required");
    }
    name = item.at("name").get<std::string>();
    if (item.contains("nu")) {
      const json& nu = item.at("nu");
      spec.nu.clear();
      if (nu.is_number_integer()) {
        spec.nu.push_back(nu.get<int>());
      } else if (nu.is_array()) {
        for (const json& v : nu) {
          if (!v.is_number_integer()) {
            throw ConfigError(field + ".nu", "must hold integers");
          }
          spec.nu.push_back(v.get<int>());
        }
      } else {
        throw ConfigError(field + ".nu", "must be an integer or array");
      }
    }
    spec.ii_threshold = get_field<double>(item, "ii_threshold",
                                          field + ".ii_threshold",
                                          kDefaultIiThreshold);
  } else {
    throw ConfigError(field, "must be a name or an object");
  }
  const std::optional<Method> m = parse_method(name);
  if (!m) throw ConfigError(field + ".name", "unknown method '" + name + "'");
  spec.method = *m;
  return spec;
}

ThurstoneGenConfig parse_thurstone_object(const json& env,
                                          const std::string& prefix,
                                          int default_k) {
  ThurstoneGenConfig gen;
  gen.num_alternatives = get_field<int>(env, "K", prefix + "K", default_k);
  std::tie(gen.gamma_lo, gen.gamma_hi) =
      get_range(env, "gamma_range", prefix + "gamma_range", {0.0, 1.0});
  std::tie(gen.variance_lo, gen.variance_hi) =
      get_range(env, "variance_range", prefix + "variance_range", {0.0, 1.0});
  gen.perturbation = get_field<double>(env, "d", prefix + "d", 0.0);
  if (env.contains("gamma_overrides")) {
    const json& ov = env.at("gamma_overrides");
    if (!ov.is_object()) {
      throw ConfigError(prefix + "gamma_overrides", "must be an object");
    }
    for (const auto& item : ov.items()) {
      const std::string field = prefix + "gamma_overrides." + item.key();
      int index = 0;
      try {
        std::size_t used = 0;
        index = std::stoi(item.key(), &used);
        if (used != item.key().size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ConfigError(field, "key must be an alternative index");
      }
      if (!item.value().is_number()) throw ConfigError(field, "must be a number");
      gen.gamma_overrides[index] = item.value().get<double>();
    }
  }
  return gen;
}

std::int64_t count_correct(const std::vector<RunRecord>& records) {
  return std::count_if(records.begin(), records.end(),
                       [](const RunRecord& r) { return r.correct; });
}

// Runs fn(task) for task in [0, n) on a small worker pool. The first failure
// is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t t = 0; t < n; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < n; t = next++) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct RunUnit {
  const MethodSpec* spec;
  int nu;
  std::string label;
};

std::vector<RunUnit> run_units(const BenchmarkConfig& config) {
  std::vector<RunUnit> units;
  for (const MethodSpec& spec : config.methods) {
    if (spec.method == Method::kSelectTop) {
      for (int nu : spec.nu) units.push_back({&spec, nu, run_label(spec.method, nu)});
    } else {
      units.push_back({&spec, 1, run_label(spec.method, 1)});
    }
  }
  return units;
}

std::vector<std::vector<RunRecord>> run_all(const BenchmarkConfig& config,
                                            const std::vector<RunUnit>& units) {
  const std::size_t reps = static_cast<std::size_t>(config.replications);
  std::vector<std::vector<RunRecord>> out(units.size() * reps);
  parallel_for(out.size(), config.threads, [&](std::size_t task) {
    const RunUnit& unit = units[task / reps];
    const int rep = static_cast<int>(task % reps);
    try {
      out[task] = run_replication(config, *unit.spec, unit.nu, rep);
    } catch (const std::exception& e) {
      throw std::runtime_error(unit.label + " replication " +
                               std::to_string(rep) + ": " + e.what());
    }
  });
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string run_label(Method method, int nu) {
  std::string label(method_name(method));
  if (method == Method::kSelectTop) label += "/nu=" + std::to_string(nu);
  return label;
}

void BenchmarkConfig::validate() const {
  if (num_alternatives < 2) throw ConfigError("K", "must be at least 2");
  if (select < 1 || select > num_alternatives) {
    throw ConfigError("k", "must be between 1 and K");
  }
  if (replications < 1) throw ConfigError("replications", "must be at least 1");
  if (warmup < 1) throw ConfigError("n0", "must be at least 1");
  if (methods.empty()) throw ConfigError("methods", "must list at least one method");
  if (refit_interval < 1) throw ConfigError("refit_interval", "must be at least 1");
  const std::int64_t warm = static_cast<std::int64_t>(warmup) * num_pairs(num_alternatives);
  bool budgeted = false;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const MethodSpec& spec = methods[m];
    const std::string field = "methods[" + std::to_string(m) + "]";
    if (spec.method == Method::kSelectTop) {
      if (spec.nu.empty()) throw ConfigError(field + ".nu", "must not be empty");
      for (int nu : spec.nu) {
        if (nu < 1) throw ConfigError(field + ".nu", "values must be at least 1");
      }
      continue;
    }
    budgeted = true;
    if (spec.method != Method::kUniform) {
      if (select >= num_alternatives) {
        throw ConfigError("k", "must be below K for " +
                                   std::string(method_name(spec.method)));
      }
      if (warmup < 2) throw ConfigError("n0", "must be at least 2 for AEPCS methods");
    }
  }
  if (budgeted && budget < warm) {
    throw ConfigError("budget", "is below the warm-up total n0*K(K-1)/2 = " +
                                    std::to_string(warm));
  }
  if (budgeted) {
    if (checkpoints.empty()) throw ConfigError("checkpoints", "must not be empty");
    std::int64_t prev = 0;
    for (std::int64_t c : checkpoints) {
      if (c <= prev) throw ConfigError("checkpoints", "must be strictly increasing");
      if (c > budget) throw ConfigError("checkpoints", "exceed the budget");
      if (c < static_cast<std::int64_t>(num_pairs(num_alternatives))) {
        throw ConfigError("checkpoints",
                          "must leave every pair sampled at least once");
      }
      prev = c;
    }
  }
  if (environment.kind == EnvironmentSpec::Kind::kThurstone) {
    environment.thurstone.validate();
    if (environment.thurstone.num_alternatives != num_alternatives) {
      throw ConfigError("environment.K", "must match K");
    }
  } else if (environment.matrix_path.empty()) {
    throw ConfigError("environment.path", "is required for matrix environments");
  }
  for (double d : d_values) {
    if (!(d >= 0.0)) throw ConfigError("d_values", "must be non-negative");
  }
}

BenchmarkConfig parse_benchmark_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("config", std::string("is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config", "must be a JSON object");
  require_keys(root, "",
               {"K", "k", "budget", "n0", "replications", "methods",
                "environment", "seed", "checkpoints", "checkpoint_interval",
                "refit_interval", "d_values", "threads"});

  BenchmarkConfig config;
  if (!root.contains("K")) throw ConfigError("K", "is required");
  if (!root.contains("k")) throw ConfigError("k", "is required");
  if (!root.contains("methods")) throw ConfigError("methods", "is required");
  config.num_alternatives = get_field<int>(root, "K", "K", 0);
  config.select = get_field<int>(root, "k", "k", 0);
  config.budget = get_field<std::int64_t>(root, "budget", "budget", 1000);
  config.warmup = get_field<int>(root, "n0", "n0", kDefaultWarmup);
  config.replications = get_field<int>(root, "replications", "replications", 500);
  config.seed = get_field<std::uint64_t>(root, "seed", "seed", 1);
  config.refit_interval = get_field<int>(root, "refit_interval", "refit_interval", 1);
  config.threads = get_field<int>(root, "threads", "threads", 0);
  config.d_values = get_field<std::vector<double>>(root, "d_values", "d_values", {});

  const json& methods = root.at("methods");
  if (!methods.is_array()) throw ConfigError("methods", "must be an array");
  for (std::size_t m = 0; m < methods.size(); ++m) {
    config.methods.push_back(parse_method_spec(methods[m], m));
  }

  config.environment.thurstone.num_alternatives = config.num_alternatives;
  if (root.contains("environment")) {
    const json& env = root.at("environment");
    if (!env.is_object()) throw ConfigError("environment", "must be an object");
    require_keys(env, "environment.",
                 {"type", "K", "gamma_range", "variance_range",
                  "gamma_overrides", "d", "path"});
    const std::string type =
        get_field<std::string>(env, "type", "environment.type", "thurstone");
    if (type == "thurstone") {
      config.environment.thurstone =
          parse_thurstone_object(env, "environment.", config.num_alternatives);
    } else if (type == "matrix") {
      config.environment.kind = EnvironmentSpec::Kind::kMatrix;
      config.environment.matrix_path =
          get_field<std::string>(env, "path", "environment.path", "");
    } else {
      throw ConfigError("environment.type", "unknown environment type '" + type + "'");
    }
  }

  if (root.contains("checkpoints")) {
    config.checkpoints = get_field<std::vector<std::int64_t>>(
        root, "checkpoints", "checkpoints", {});
  } else {
    const std::int64_t interval = get_field<std::int64_t>(
        root, "checkpoint_interval", "checkpoint_interval",
        kDefaultCheckpointInterval);
    if (interval < 1) {
      throw ConfigError("checkpoint_interval", "must be at least 1");
    }
    const std::int64_t first = static_cast<std::int64_t>(num_pairs(
        std::max(config.num_alternatives, 2)));
    for (std::int64_t c = interval; c < config.budget; c += interval) {
      if (c >= first) config.checkpoints.push_back(c);
    }
    config.checkpoints.push_back(config.budget);
  }

  config.validate();
  return config;
}

ThurstoneGenConfig parse_generator_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("config", std::string("is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config", "must be a JSON object");
  require_keys(root, "", {"type", "K", "gamma_range", "variance_range",
                          "gamma_overrides", "d"});
  if (get_field<std::string>(root, "type", "type", "thurstone") != "thurstone") {
    throw ConfigError("type", "generator configs must be of type thurstone");
  }
  ThurstoneGenConfig gen = parse_thurstone_object(root, "", 10);
  gen.validate();
  return gen;
}

BenchmarkConfig load_benchmark_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("config", "cannot read " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_benchmark_config(buf.str());
}

Environment make_environment(const BenchmarkConfig& config, int replication) {
  const std::uint64_t seed =
      derive_seed(config.seed, {static_cast<std::uint64_t>(replication)});
  if (config.environment.kind == EnvironmentSpec::Kind::kMatrix) {
    Environment env = load_matrix_env(config.environment.matrix_path, seed);
    if (env.size() != config.num_alternatives) {
      throw ConfigError("environment.path", "matrix size does not match K");
    }
    return env;
  }
  return generate_thurstone(config.environment.thurstone, seed);
}

std::vector<RunRecord> run_replication(const BenchmarkConfig& config,
                                       const MethodSpec& method, int nu,
                                       int replication) {
  const std::string label = run_label(method.method, nu);
  const std::uint64_t rep = static_cast<std::uint64_t>(replication);
  const std::uint64_t tag = name_hash(label.c_str());

  Environment env = make_environment(config, replication);
  env.reseed(derive_seed(
      config.seed, {rep, static_cast<std::uint64_t>(Stream::kSampling), tag}));
  const std::vector<int> truth = true_topk(env, config.select);

  PolicyConfig pc;
  pc.method = method.method;
  pc.num_alternatives = config.num_alternatives;
  pc.select = config.select;
  pc.budget = config.budget;
  pc.warmup = config.warmup;
  pc.ii_threshold = method.ii_threshold;
  pc.refit_interval = config.refit_interval;
  pc.nu = nu;
  pc.seed = derive_seed(config.seed,
                        {rep, static_cast<std::uint64_t>(Stream::kPolicy), tag});
  Policy policy(pc);

  std::vector<RunRecord> records;
  auto snapshot = [&] {
    RunRecord r;
    r.method = label;
    r.replication = replication;
    r.step = policy.samples_taken();
    r.correct = policy.current_selection() == truth;
    r.ii = policy.intransitivity();
    r.pairs_sampled = static_cast<std::int64_t>(policy.stats().sampled_pairs());
    records.push_back(std::move(r));
  };

  if (method.method == Method::kSelectTop) {
    while (policy.phase() != Phase::kFinished) {
      const Comparison c = policy.next_pair();
      policy.observe(c, env.sample(c.first, c.second));
    }
    snapshot();
    return records;
  }

  std::size_t next_checkpoint = 0;
  while (policy.phase() != Phase::kFinished) {
    const Comparison c = policy.next_pair();
    policy.observe(c, env.sample(c.first, c.second));
    if (next_checkpoint < config.checkpoints.size() &&
        policy.samples_taken() == config.checkpoints[next_checkpoint]) {
      snapshot();
      ++next_checkpoint;
    }
  }
  return records;
}

std::pair<double, double> wilson_interval(std::int64_t successes,
                                          std::int64_t trials) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  double lo = std::clamp(center - half, 0.0, 1.0);
  double hi = std::clamp(center + half, 0.0, 1.0);
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {lo, hi};
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  const std::vector<RunUnit> units = run_units(config);
  std::vector<std::vector<RunRecord>> runs = run_all(config, units);
  const std::size_t reps = static_cast<std::size_t>(config.replications);

  BenchmarkResult result;
  for (std::size_t u = 0; u < units.size(); ++u) {
    const RunUnit& unit = units[u];
    std::vector<RunRecord> unit_records;
    for (std::size_t r = 0; r < reps; ++r) {
      for (RunRecord& rec : runs[u * reps + r]) unit_records.push_back(std::move(rec));
    }

    if (unit.spec->method == Method::kSelectTop) {
      double samples = 0.0;
      for (const RunRecord& rec : unit_records) samples += static_cast<double>(rec.step);
      const double mean_samples = samples / static_cast<double>(reps);
      const std::int64_t wins = count_correct(unit_records);
      const auto [lo, hi] = wilson_interval(wins, static_cast<std::int64_t>(reps));
      result.table.push_back({unit.label, std::llround(mean_samples),
                              static_cast<double>(wins) / static_cast<double>(reps),
                              lo, hi, mean_samples});
    } else {
      for (std::int64_t step : config.checkpoints) {
        std::int64_t wins = 0;
        std::int64_t trials = 0;
        for (const RunRecord& rec : unit_records) {
          if (rec.step != step) continue;
          ++trials;
          wins += rec.correct ? 1 : 0;
        }
        const auto [lo, hi] = wilson_interval(wins, trials);
        const double rate =
            trials > 0 ? static_cast<double>(wins) / static_cast<double>(trials) : 0.0;
        result.table.push_back(
            {unit.label, step, rate, lo, hi, static_cast<double>(step)});
      }
    }
    for (RunRecord& rec : unit_records) result.records.push_back(std::move(rec));
  }
  return result;
}

std::vector<IiTraceRow> ii_trace(const BenchmarkConfig& config) {
  if (config.d_values.empty()) throw ConfigError("d_values", "must not be empty");
  if (config.environment.kind != EnvironmentSpec::Kind::kThurstone) {
    throw ConfigError("environment.type", "ii_trace needs a Thurstone generator");
  }
  std::vector<IiTraceRow> rows;
  for (double d : config.d_values) {
    BenchmarkConfig run = config;
    run.environment.thurstone.perturbation = d;
    run.methods = {MethodSpec{Method::kMlPocbam}};
    run.validate();
    const std::vector<RunUnit> units = run_units(run);
    const std::vector<std::vector<RunRecord>> runs = run_all(run, units);
    for (std::int64_t step : run.checkpoints) {
      double total = 0.0;
      int count = 0;
      for (const auto& rep : runs) {
        for (const RunRecord& rec : rep) {
          if (rec.step == step && rec.ii) {
            total += *rec.ii;
            ++count;
          }
        }
      }
      if (count > 0) rows.push_back({d, step, total / count});
    }
  }
  return rows;
}

std::string format_records_csv(const std::vector<RunRecord>& records) {
  std::string out = "method,replication,step,correct,ii,pairs_sampled\n";
  for (const RunRecord& r : records) {
    out += r.method + ',' + std::to_string(r.replication) + ',' +
           std::to_string(r.step) + ',' + (r.correct ? "1" : "0") + ',' +
           (r.ii ? fmt_double(*r.ii) : std::string()) + ',' +
           std::to_string(r.pairs_sampled) + '\n';
  }
  return out;
}

std::string format_success_csv(const std::vector<SuccessRow>& rows) {
  std::string out = "method,step,rate,ci_low,ci_high,mean_samples\n";
  for (const SuccessRow& r : rows) {
    out += r.method + ',' + std::to_string(r.step) + ',' + fmt_double(r.rate) +
           ',' + fmt_double(r.ci_low) + ',' + fmt_double(r.ci_high) + ',' +
           fmt_double(r.mean_samples) + '\n';
  }
  return out;
}

std::string format_ii_trace_csv(const std::vector<IiTraceRow>& rows) {
  std::string out = "d,step,mean_ii\n";
  for (const IiTraceRow& r : rows) {
    out += fmt_double(r.d) + ',' + std::to_string(r.step) + ',' +
           fmt_double(r.mean_ii) + '\n';
  }
  return out;
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
  const std::vector<std::string> lines = csv_lines(text);
  if (lines.empty() || lines.front() != "method,replication,step,correct,ii,pairs_sampled") {
    throw std::invalid_argument("records CSV has an unexpected header");
  }
  std::vector<RunRecord> out;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::vector<std::string> c = split_csv_line(lines[l]);
    if (c.size() != 6) {
      throw std::invalid_argument("records CSV line " + std::to_string(l + 1) +
                                  " has " + std::to_string(c.size()) + " fields");
    }
    RunRecord r;
    r.method = c[0];
    r.replication = std::stoi(c[1]);
    r.step = std::stoll(c[2]);
    r.correct = c[3] == "1";
    if (!c[4].empty()) r.ii = std::stod(c[4]);
    r.pairs_sampled = std::stoll(c[5]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SuccessRow> parse_success_csv(const std::string& text) {
  const std::vector<std::string> lines = csv_lines(text);
  if (lines.empty() || lines.front() != "method,step,rate,ci_low,ci_high,mean_samples") {
    throw std::invalid_argument("success CSV has an unexpected header");
  }
  std::vector<SuccessRow> out;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::vector<std::string> c = split_csv_line(lines[l]);
    if (c.size() != 6) {
      throw std::invalid_argument("success CSV line " + std::to_string(l + 1) +
                                  " is malformed");
    }
    out.push_back({c[0], std::stoll(c[1]), std::stod(c[2]), std::stod(c[3]),
                   std::stod(c[4]), std::stod(c[5])});
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

}  // namespace topkduel
