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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "topkduel/environment.h"
#include "topkduel/errors.h"
#include "topkduel/harness.h"
#include "topkduel/normal.h"
#include "topkduel/pair_stats.h"
#include "topkduel/thurstone.h"

namespace topkduel::cli {

namespace {

// Bad user input that is not a config field: malformed data, odd flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(const std::string& text, const std::string& flag) {
  const auto parse_one = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw UsageError(flag + ": cannot parse '" + text + "' as a number");
    }
    return v;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) return parse_one(text);
  const double num = parse_one(text.substr(0, slash));
  const double den = parse_one(text.substr(slash + 1));
  if (den == 0.0) throw UsageError(flag + ": zero denominator in '" + text + "'");
  return num / den;
}

// Reads "i,j,result" rows. K is one more than the largest index seen.
StatsTable load_data(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<std::tuple<int, int, double>> rows;
  int max_index = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "i,j,result") {
        throw UsageError(path + ":" + std::to_string(line_no) +
                         ": expected header 'i,j,result'");
      }
      header_seen = true;
      continue;
    }
    const auto bad = [&](const std::string& why) {
      return UsageError(path + ":" + std::to_string(line_no) +
                        ": malformed row '" + line + "': " + why);
    };
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 3) throw bad("expected 3 fields");
    int idx[2];
    for (int c = 0; c < 2; ++c) {
      std::size_t used = 0;
      try {
        idx[c] = std::stoi(cells[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cells[c].size() || idx[c] < 0) {
        throw bad("index must be a non-negative integer");
      }
    }
    if (idx[0] == idx[1]) throw bad("an alternative cannot face itself");
    double result = 0.0;
    std::size_t used = 0;
    try {
      result = std::stod(cells[2], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cells[2].size() || !std::isfinite(result)) {
      throw bad("result must be a finite number");
    }
    rows.emplace_back(idx[0], idx[1], result);
    max_index = std::max({max_index, idx[0], idx[1]});
  }
  if (!header_seen) throw UsageError(path + ": empty data file");
  StatsTable table(max_index + 1);
  for (const auto& [i, j, r] : rows) table.record(i, j, r);
  return table;
}

StatsTable sample_env(const std::string& path, int n, std::uint64_t seed) {
  if (n < 1) throw UsageError("--n must be at least 1");
  Environment env = load_matrix_env(path, seed);
  StatsTable table(env.size());
  for (const PairKey& p : all_pairs(env.size())) {
    for (int t = 0; t < n; ++t) table.record(p.first, p.second, env.sample(p.first, p.second));
  }
  return table;
}

void require_two_samples(const StatsTable& table) {
  const int k = table.size();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::int64_t n = table.count(i, j);
      if (n < 2) {
        throw UsageError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                         ") has " + std::to_string(n) +
                         " sample(s); the fit needs at least 2 per pair");
      }
    }
  }
}

struct DataSource {
  std::string data;
  std::string env;
  int n = 100;
  std::uint64_t seed = 1;

  void add_flags(CLI::App* cmd) {
    auto* d = cmd->add_option("--data", data, "CSV of i,j,result observations");
    auto* e = cmd->add_option("--env", env, "matrix environment to sample from");
    d->excludes(e);
    cmd->add_option("--n", n, "samples per pair drawn from --env")->needs(e);
    cmd->add_option("--seed", seed, "sampling seed for --env");
  }

  StatsTable load() const {
    if (data.empty() && env.empty()) throw UsageError("one of --data or --env is required");
    StatsTable table = data.empty() ? sample_env(env, n, seed) : load_data(data);
    require_two_samples(table);
    return table;
  }
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int cmd_bench(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed, std::ostream& out) {
  BenchmarkConfig config = load_benchmark_config(config_path);
  if (seed) config.seed = *seed;
  const BenchmarkResult result = run_benchmark(config);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  write_text_file((dir / "success.csv").string(), format_success_csv(result.table));
  write_text_file((dir / "records.csv").string(), format_records_csv(result.records));
  if (!config.d_values.empty()) {
    write_text_file((dir / "ii_trace.csv").string(),
                    format_ii_trace_csv(ii_trace(config)));
  }
  out << "wrote " << result.table.size() << " success rows and "
      << result.records.size() << " records to " << out_dir << "\n";
  return kExitOk;
}

int cmd_fit(const DataSource& source, const std::string& out_path,
            std::ostream& out) {
  const StatsTable table = source.load();
  const FitResult fit = fit_mle(table, init_params(table));
  const int k = table.size();
  std::string text = "kind,i,j,value\n";
  for (int i = 0; i < k; ++i) {
    text += "gamma," + std::to_string(i) + ",," + fmt17(fit.params.gamma[i]) + "\n";
  }
  for (const PairKey& p : all_pairs(k)) {
    text += "sigma," + std::to_string(p.first) + "," + std::to_string(p.second) +
            "," + fmt17(fit.params.pair_sigma(p.first, p.second)) + "\n";
  }
  text += std::string("converged,,,") + (fit.report.converged ? "1" : "0") + "\n";
  text += "iterations,,," + std::to_string(fit.report.iterations) + "\n";
  text += "final_gradient_norm,,," + fmt17(fit.report.final_gradient_norm) + "\n";
  text += "log_likelihood,,," + fmt17(fit.report.log_likelihood) + "\n";
  emit(out_path, text, out);
  return kExitOk;
}

int cmd_ii(const DataSource& source, std::ostream& out) {
  const StatsTable table = source.load();
  const FitResult fit = fit_mle(table, init_params(table));
  const double ii = intransitivity_index(score_posterior_independent(table),
                                         score_posterior_model(fit.params, table));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f\n", ii);
  out << buf;
  return kExitOk;
}

int cmd_gen_env(const std::string& config_path, const std::string& out_path,
                std::uint64_t seed, std::optional<double> d) {
  ThurstoneGenConfig gen;
  if (!config_path.empty()) {
    std::string text;
    try {
      text = read_text_file(config_path);
    } catch (const IoError&) {
      throw ConfigError("config", "cannot read " + config_path);
    }
    gen = parse_generator_config(text);
  }
  if (d) gen.perturbation = *d;
  save_matrix_env(generate_thurstone(gen, seed), out_path);
  return kExitOk;
}

int cmd_analyze_select(const std::vector<long>& ns, const std::string& gap_text,
                       const std::string& sigma_text, std::ostream& out) {
  const double gap = parse_real(gap_text, "--gap");
  const double sigma = parse_real(sigma_text, "--sigma");
  if (!(sigma > 0.0)) throw UsageError("--sigma must be positive");
  std::string text = "n,win_probability\n";
  for (long n : ns) {
    if (n < 1) throw UsageError("--n values must be at least 1");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%ld,%.6f\n", n,
                  win_probability_analysis(n, gap, sigma));
    text += buf;
  }
  out << text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Top-k selection from noisy pairwise comparisons", "topkduel"};
  app.require_subcommand(1, 1);

  std::string bench_config, bench_out;
  std::optional<std::uint64_t> bench_seed;
  auto* bench = app.add_subcommand("bench", "run a replicated benchmark");
  bench->add_option("--config", bench_config, "benchmark JSON")->required();
  bench->add_option("--out", bench_out, "output directory")->required();
  bench->add_option("--seed", bench_seed, "override the base seed");

  DataSource fit_src;
  std::string fit_out;
  auto* fit = app.add_subcommand("fit", "fit the latent-quality model");
  fit_src.add_flags(fit);
  fit->add_option("--out", fit_out, "output CSV (stdout if omitted)");

  DataSource ii_src;
  auto* ii = app.add_subcommand("ii", "print the intransitivity index");
  ii_src.add_flags(ii);

  std::string gen_config, gen_out;
  std::uint64_t gen_seed = 1;
  std::optional<double> gen_d;
  auto* gen = app.add_subcommand("gen-env", "write a matrix environment");
  gen->add_option("--config", gen_config, "generator JSON");
  gen->add_option("--out", gen_out, "output matrix CSV")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--d", gen_d, "perturbation standard deviation");

  std::vector<long> sel_n;
  std::string sel_gap, sel_sigma;
  auto* sel = app.add_subcommand("analyze-select",
                                 "win probability of the better alternative");
  sel->add_option("--n", sel_n, "comparison counts, comma separated")
      ->required()
      ->delimiter(',');
  sel->add_option("--gap", sel_gap, "mean gap; fractions like 1/11 allowed")->required();
  sel->add_option("--sigma", sel_sigma, "outcome standard deviation")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*bench) return cmd_bench(bench_config, bench_out, bench_seed, out);
    if (*fit) return cmd_fit(fit_src, fit_out, out);
    if (*ii) return cmd_ii(ii_src, out);
    if (*gen) return cmd_gen_env(gen_config, gen_out, gen_seed, gen_d);
    if (*sel) return cmd_analyze_select(sel_n, sel_gap, sel_sigma, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MatrixFileError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace topkduel::cli
