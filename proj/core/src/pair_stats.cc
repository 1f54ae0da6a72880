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

#include "topkduel/pair_stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace topkduel {

std::vector<PairKey> all_pairs(int k) {
  std::vector<PairKey> pairs;
  pairs.reserve(num_pairs(k));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

void PairStats::add(double r) {
  ++n;
  const double delta = r - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (r - mean);
  if (m2 < 0.0) m2 = 0.0;
}

StatsTable::StatsTable(int num_alternatives) : k_(num_alternatives) {
  if (num_alternatives < 2) {
    throw std::invalid_argument("StatsTable needs at least 2 alternatives, got " +
                                std::to_string(num_alternatives));
  }
  entries_.resize(num_pairs(k_));
}

std::size_t StatsTable::checked_index(int i, int j) const {
  if (i < 0 || j < 0 || i >= k_ || j >= k_) {
    throw std::out_of_range("pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ") out of range for K=" +
                            std::to_string(k_));
  }
  if (i == j) {
    throw std::invalid_argument("self-comparison of alternative " +
                                std::to_string(i));
  }
  return i < j ? pair_index(i, j, k_) : pair_index(j, i, k_);
}

void StatsTable::record(int i, int j, double r) {
  const std::size_t idx = checked_index(i, j);
  entries_[idx].add(i < j ? r : -r);
  ++total_;
}

std::int64_t StatsTable::count(int i, int j) const {
  return entries_[checked_index(i, j)].n;
}

const PairStats& StatsTable::canonical(int i, int j) const {
  return entries_[checked_index(i, j)];
}

double StatsTable::mean(int i, int j) const {
  const PairStats& s = entries_[checked_index(i, j)];
  if (s.n == 0) {
    throw std::domain_error("no samples for pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
  }
  return i < j ? s.mean : -s.mean;
}

double StatsTable::stddev(int i, int j) const {
  const PairStats& s = entries_[checked_index(i, j)];
  if (s.n < 2) {
    throw std::domain_error("pair (" + std::to_string(i) + "," +
                            std::to_string(j) +
                            ") needs two samples for a standard deviation");
  }
  const double sd = std::sqrt(s.m2 / static_cast<double>(s.n - 1));
  return std::max(sd, kSigmaFloor);
}

double StatsTable::borda_estimate(int i) const {
  double total = 0.0;
  for (int j = 0; j < k_; ++j) {
    if (j != i) total += mean(i, j);
  }
  return total;
}

std::vector<double> StatsTable::borda_estimates() const {
  std::vector<double> out(k_);
  for (int i = 0; i < k_; ++i) out[i] = borda_estimate(i);
  return out;
}

std::int64_t StatsTable::min_count() const {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  for (const PairStats& s : entries_) lo = std::min(lo, s.n);
  return lo;
}

std::size_t StatsTable::sampled_pairs() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const PairStats& s) { return s.n > 0; }));
}

}  // namespace topkduel
