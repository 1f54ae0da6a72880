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

#ifndef TOPKDUEL_TESTS_SUPPORT_GENERATORS_H_
#define TOPKDUEL_TESTS_SUPPORT_GENERATORS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "topkduel/environment.h"
#include "topkduel/pair_stats.h"
#include "topkduel/thurstone.h"

namespace topkduel::testing {

// Seeded source for property cases. Each case gets its own engine so a
// failure can be replayed from the reported case seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal(double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return engine_; }

  // Table with every pair sampled between lo and hi times from a random
  // skew-symmetric mean structure; orientation of each record is random.
  StatsTable table(int k, int lo, int hi) {
    StatsTable t(k);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const double mu = real(-2.0, 2.0);
        const double sd = real(0.1, 2.0);
        const int n = integer(lo, hi);
        for (int s = 0; s < n; ++s) {
          const double r = normal(mu, sd);
          if (coin()) {
            t.record(i, j, r);
          } else {
            t.record(j, i, -r);
          }
        }
      }
    }
    return t;
  }

  ThurstoneParams params(int k) {
    ThurstoneParams p;
    p.gamma.resize(k);
    for (double& g : p.gamma) g = real(-1.5, 1.5);
    p.gamma[0] = 0.0;
    p.sigma.resize(num_pairs(k));
    for (double& s : p.sigma) s = real(0.2, 2.5);
    return p;
  }

  ScorePosterior posterior(int k) {
    ScorePosterior post;
    post.mean.resize(k);
    post.var.resize(k);
    for (int i = 0; i < k; ++i) {
      post.mean[i] = real(-5.0, 5.0);
      post.var[i] = real(0.01, 4.0);
    }
    return post;
  }

 private:
  std::mt19937_64 engine_;
};

// Seed for property case `index` of a named property.
inline std::uint64_t case_seed(const std::string& property, int index) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : property) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h ^ (static_cast<std::uint64_t>(index) * 0x9e3779b97f4a7c15ULL);
}

// Environment with all variances at `variance` and means from `mu`
// (row-major, must be skew-symmetric).
inline Environment matrix_env(int k, std::vector<double> mu, double variance,
                              std::uint64_t seed = 1) {
  std::vector<double> var(static_cast<std::size_t>(k) * k, variance);
  return Environment(k, std::move(mu), std::move(var), seed);
}

// Noiseless, totally ordered environment: mu_ij = quality_i - quality_j.
inline Environment ordered_env(const std::vector<double>& quality,
                               double variance = 1e-14,
                               std::uint64_t seed = 1) {
  const int k = static_cast<int>(quality.size());
  std::vector<double> mu(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) mu[i * k + j] = quality[i] - quality[j];
    }
  }
  return matrix_env(k, std::move(mu), variance, seed);
}

}  // namespace topkduel::testing

#endif  // TOPKDUEL_TESTS_SUPPORT_GENERATORS_H_
