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

#include "topkduel/environment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "topkduel/acquisition.h"
#include "topkduel/errors.h"
#include "topkduel/pair_stats.h"

namespace topkduel {

namespace {

constexpr double kSkewTolerance = 1e-9;

std::string pair_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Environment::Environment(int k, std::vector<double> means,
                         std::vector<double> variances,
                         std::uint64_t sampling_seed)
    : k_(k),
      means_(std::move(means)),
      variances_(std::move(variances)),
      rng_(sampling_seed) {
  if (k < 2) throw std::invalid_argument("environment needs K >= 2");
  const std::size_t cells = static_cast<std::size_t>(k) * k;
  if (means_.size() != cells || variances_.size() != cells) {
    throw std::invalid_argument("environment matrices must be K x K");
  }
  for (int i = 0; i < k; ++i) {
    if (mean(i, i) != 0.0) {
      throw std::invalid_argument("diagonal mean at " + std::to_string(i) +
                                  " must be zero");
    }
    for (int j = i + 1; j < k; ++j) {
      if (mean(i, j) != -mean(j, i)) {
        throw std::invalid_argument("means not skew-symmetric at " +
                                    pair_name(i, j));
      }
      if (variance(i, j) != variance(j, i) || !(variance(i, j) > 0.0)) {
        throw std::invalid_argument("variance at " + pair_name(i, j) +
                                    " must be symmetric and positive");
      }
    }
  }
}

double Environment::sample(int i, int j) {
  if (i < 0 || j < 0 || i >= k_ || j >= k_) {
    throw std::out_of_range("pair " + pair_name(i, j) + " out of range");
  }
  if (i == j) throw std::invalid_argument("self-comparison " + pair_name(i, j));
  return rng_.normal(mean(i, j), std::sqrt(variance(i, j)));
}

std::vector<double> Environment::borda_scores() const {
  std::vector<double> scores(k_, 0.0);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      if (j != i) scores[i] += mean(i, j);
    }
  }
  return scores;
}

void ThurstoneGenConfig::validate() const {
  if (num_alternatives < 2) throw ConfigError("K", "must be at least 2");
  if (!(gamma_hi > gamma_lo)) {
    throw ConfigError("gamma_range", "must be a non-degenerate interval");
  }
  if (!(variance_hi > variance_lo) || variance_hi <= kSigmaFloor) {
    throw ConfigError("variance_range", "must be a non-degenerate interval");
  }
  if (!(perturbation >= 0.0)) throw ConfigError("d", "must be non-negative");
  for (const auto& [index, value] : gamma_overrides) {
    if (index < 0 || index >= num_alternatives || !std::isfinite(value)) {
      throw ConfigError("gamma_overrides",
                        "bad override for index " + std::to_string(index));
    }
  }
}

Environment generate_thurstone(const ThurstoneGenConfig& config,
                               std::uint64_t seed) {
  config.validate();
  const int k = config.num_alternatives;
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(Stream::kEnvironment)}));

  std::vector<double> gamma(k);
  for (int i = 0; i < k; ++i) gamma[i] = rng.uniform(config.gamma_lo, config.gamma_hi);
  for (const auto& [index, value] : config.gamma_overrides) gamma[index] = value;

  std::vector<double> means(static_cast<std::size_t>(k) * k, 0.0);
  std::vector<double> vars(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      double var = 0.0;
      do {
        var = rng.uniform(config.variance_lo, config.variance_hi);
      } while (var < kSigmaFloor);
      const double eps =
          config.perturbation > 0.0 ? rng.normal(0.0, config.perturbation) : 0.0;
      const double mu = gamma[i] - gamma[j] + eps;
      means[i * k + j] = mu;
      means[j * k + i] = -mu;
      vars[i * k + j] = var;
      vars[j * k + i] = var;
    }
  }
  Environment env(k, std::move(means), std::move(vars),
                  derive_seed(seed, {static_cast<std::uint64_t>(Stream::kSampling)}));
  env.set_latent_quality(std::move(gamma));
  return env;
}

std::vector<int> true_topk(const Environment& env, int k) {
  if (k < 0 || k > env.size()) {
    throw std::invalid_argument("k out of range for true_topk");
  }
  return top_k_indices(env.borda_scores(), k);
}

std::string format_matrix_env(const Environment& env) {
  const int k = env.size();
  std::string out = "K=" + std::to_string(k) + "\n";
  char buf[64];
  auto emit = [&](const std::vector<double>& m) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", m[i * k + j]);
        if (j > 0) out += ',';
        out += buf;
      }
      out += '\n';
    }
  };
  emit(env.mean_matrix());
  out += '\n';
  emit(env.variance_matrix());
  return out;
}

void save_matrix_env(const Environment& env, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << format_matrix_env(env);
  if (!file) throw IoError("failed writing " + path);
}

Environment parse_matrix_env(const std::string& text, std::uint64_t seed) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_line = [&](std::string& out) -> bool {
    if (!std::getline(in, out)) return false;
    ++line_no;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  };

  if (!next_line(line) || line.rfind("K=", 0) != 0) {
    throw MatrixFormatError("line 1: expected header K=<int>");
  }
  int k = 0;
  {
    const char* first = line.data() + 2;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc() || ptr != last || k < 2) {
      throw MatrixFormatError("line 1: bad population size '" + line + "'");
    }
  }

  auto read_block = [&](const char* what) {
    std::vector<double> m;
    m.reserve(static_cast<std::size_t>(k) * k);
    for (int row = 0; row < k; ++row) {
      if (!next_line(line) || line.empty()) {
        throw MatrixShapeError(std::string(what) + " matrix has fewer than " +
                               std::to_string(k) + " rows");
      }
      int cols = 0;
      std::size_t pos = 0;
      while (true) {
        const std::size_t comma = line.find(',', pos);
        const std::size_t end = comma == std::string::npos ? line.size() : comma;
        std::size_t b = pos;
        std::size_t e = end;
        while (b < e && line[b] == ' ') ++b;
        while (e > b && line[e - 1] == ' ') --e;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, value);
        if (ec != std::errc() || ptr != line.data() + e || b == e) {
          throw MatrixFormatError("line " + std::to_string(line_no) +
                                  ": not a number");
        }
        m.push_back(value);
        ++cols;
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (cols != k) {
        throw MatrixShapeError("line " + std::to_string(line_no) + ": " +
                               std::string(what) + " row has " +
                               std::to_string(cols) + " entries, expected " +
                               std::to_string(k));
      }
    }
    return m;
  };

  std::vector<double> means = read_block("mean");
  if (!next_line(line) || !line.empty()) {
    throw MatrixShapeError("line " + std::to_string(line_no) +
                           ": expected a blank line after " + std::to_string(k) +
                           " mean rows");
  }
  std::vector<double> vars = read_block("variance");
  while (next_line(line)) {
    if (!line.empty()) {
      throw MatrixShapeError("line " + std::to_string(line_no) +
                             ": trailing content after variance matrix");
    }
  }

  for (int i = 0; i < k; ++i) {
    if (std::abs(means[i * k + i]) > kSkewTolerance) {
      throw MatrixValueError("mean diagonal at " + std::to_string(i) +
                             " is not zero");
    }
    means[i * k + i] = 0.0;
    vars[i * k + i] = 0.0;
    for (int j = i + 1; j < k; ++j) {
      const double a = means[i * k + j];
      const double b = means[j * k + i];
      if (std::abs(a + b) > kSkewTolerance) {
        throw MatrixValueError("means not skew-symmetric at " + pair_name(i, j));
      }
      const double mu = (a - b) / 2.0;
      means[i * k + j] = mu;
      means[j * k + i] = -mu;
      const double v = (vars[i * k + j] + vars[j * k + i]) / 2.0;
      if (!(vars[i * k + j] > 0.0) || !(vars[j * k + i] > 0.0)) {
        throw MatrixValueError("non-positive variance at " + pair_name(i, j));
      }
      vars[i * k + j] = v;
      vars[j * k + i] = v;
    }
  }
  return Environment(k, std::move(means), std::move(vars),
                     derive_seed(seed, {static_cast<std::uint64_t>(Stream::kSampling)}));
}

Environment load_matrix_env(const std::string& path, std::uint64_t seed) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_matrix_env(buf.str(), seed);
}

int count_order_violations(const Environment& env) {
  const std::vector<int> order = rank_descending(env.borda_scores());
  int violations = 0;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (env.mean(order[a], order[b]) < 0.0) ++violations;
    }
  }
  return violations;
}

int count_intransitive_triples(const Environment& env) {
  const int k = env.size();
  int count = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (j == i || !(env.mean(i, j) > 0.0)) continue;
      for (int l = 0; l < k; ++l) {
        if (l == i || l == j) continue;
        if (env.mean(j, l) > 0.0 && env.mean(i, l) < 0.0) ++count;
      }
    }
  }
  return count;
}

}  // namespace topkduel
