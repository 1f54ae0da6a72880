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

#ifndef TOPKDUEL_PAIR_STATS_H_
#define TOPKDUEL_PAIR_STATS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace topkduel {

// Lower bound on every pairwise standard deviation (score units).
inline constexpr double kSigmaFloor = 1e-6;

// Unordered pair in canonical orientation: first < second.
struct PairKey {
  int first = 0;
  int second = 0;

  friend bool operator==(const PairKey&, const PairKey&) = default;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

// Number of unordered pairs over k alternatives.
constexpr std::size_t num_pairs(int k) {
  return k < 2 ? 0 : static_cast<std::size_t>(k) * (k - 1) / 2;
}

// Dense index of canonical pair (i, j), i < j, in lexicographic order.
constexpr std::size_t pair_index(int i, int j, int k) {
  // Pairs starting with row r occupy k-1-r slots.
  return static_cast<std::size_t>(i) * (2 * k - i - 1) / 2 + (j - i - 1);
}

// Lists every canonical pair in lexicographic order.
std::vector<PairKey> all_pairs(int k);

// Streaming sample moments for one canonical pair.
struct PairStats {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the running mean

  void add(double r);
};

// Skew-symmetric table of pairwise outcome statistics. A result r recorded
// for (j, i) with i < j is stored as -r against the canonical pair (i, j).
class StatsTable {
 public:
  explicit StatsTable(int num_alternatives);

  int size() const { return k_; }

  void record(int i, int j, double r);

  std::int64_t count(int i, int j) const;
  // Mean in the requested orientation. Throws if the pair has no data.
  double mean(int i, int j) const;
  // Sample standard deviation (n - 1 denominator), floored at kSigmaFloor.
  // Throws if the pair has fewer than two samples.
  double stddev(int i, int j) const;

  // Sum of pairwise means of i against everyone else. Throws if any pair
  // involving i is unsampled.
  double borda_estimate(int i) const;
  std::vector<double> borda_estimates() const;

  std::int64_t total_count() const { return total_; }
  // Smallest per-pair count over all pairs.
  std::int64_t min_count() const;
  // Number of pairs with at least one sample.
  std::size_t sampled_pairs() const;

  const PairStats& canonical(int i, int j) const;
  const PairStats& at(std::size_t index) const { return entries_[index]; }
  const std::vector<PairStats>& entries() const { return entries_; }

 private:
  std::size_t checked_index(int i, int j) const;

  int k_;
  std::vector<PairStats> entries_;
  std::int64_t total_ = 0;
};

}  // namespace topkduel

#endif  // TOPKDUEL_PAIR_STATS_H_
