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

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace topkduel {
namespace {

TEST(PairIndex, EnumeratesCanonicalPairsInOrder) {
  const std::vector<PairKey> pairs = all_pairs(5);
  ASSERT_EQ(pairs.size(), num_pairs(5));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    EXPECT_LT(pairs[p].first, pairs[p].second);
    EXPECT_EQ(pair_index(pairs[p].first, pairs[p].second, 5), p);
  }
  EXPECT_EQ(num_pairs(1), 0u);
}

TEST(RecordSample, SingleSample) {
  StatsTable t(3);
  t.record(0, 1, 0.3);
  EXPECT_EQ(t.count(0, 1), 1);
  EXPECT_DOUBLE_EQ(t.mean(0, 1), 0.3);
}

TEST(RecordSample, ReversedOrientationIsNegated) {
  StatsTable t(2);
  t.record(1, 0, 0.3);
  EXPECT_DOUBLE_EQ(t.canonical(0, 1).mean, -0.3);
  EXPECT_DOUBLE_EQ(t.mean(0, 1), -0.3);
  EXPECT_DOUBLE_EQ(t.mean(1, 0), 0.3);
}

TEST(RecordSample, TwoPointMeanAndVariance) {
  StatsTable t(2);
  t.record(0, 1, 1.0);
  t.record(0, 1, 3.0);
  EXPECT_DOUBLE_EQ(t.mean(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(t.mean(1, 0), -2.0);
  const double sd = t.stddev(0, 1);
  EXPECT_DOUBLE_EQ(sd * sd, 2.0);
  EXPECT_DOUBLE_EQ(sd, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(t.stddev(1, 0), sd);
}

TEST(RecordSample, Errors) {
  StatsTable t(3);
  EXPECT_THROW(t.record(0, 3, 1.0), std::out_of_range);
  EXPECT_THROW(t.record(-1, 2, 1.0), std::out_of_range);
  EXPECT_THROW(t.record(1, 1, 1.0), std::invalid_argument);
}

TEST(PairMean, SingleZeroSampleAndMissingData) {
  StatsTable t(3);
  t.record(0, 2, 0.0);
  EXPECT_EQ(t.mean(0, 2), 0.0);
  EXPECT_THROW(t.mean(0, 1), std::domain_error);
}

TEST(PairMean, LawOfLargeNumbers) {
  StatsTable t(2);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> draw(0.5, 1.0);
  for (int s = 0; s < 1000; ++s) t.record(0, 1, draw(rng));
  EXPECT_NEAR(t.mean(0, 1), 0.5, 0.1);
}

TEST(PairStddev, ConstantSamplesGiveFloor) {
  StatsTable t(2);
  t.record(0, 1, 0.7);
  t.record(0, 1, 0.7);
  EXPECT_EQ(t.stddev(0, 1), kSigmaFloor);
}

TEST(PairStddev, NeedsTwoSamples) {
  StatsTable t(2);
  EXPECT_THROW(t.stddev(0, 1), std::domain_error);
  t.record(0, 1, 1.0);
  EXPECT_THROW(t.stddev(0, 1), std::domain_error);
}

TEST(Borda, TwoAlternatives) {
  StatsTable t(2);
  t.record(0, 1, 0.3);
  EXPECT_DOUBLE_EQ(t.borda_estimate(0), 0.3);
  EXPECT_DOUBLE_EQ(t.borda_estimate(1), -0.3);
}

TEST(Borda, AllZeroMeans) {
  StatsTable t(4);
  for (const PairKey& p : all_pairs(4)) t.record(p.first, p.second, 0.0);
  for (double s : t.borda_estimates()) EXPECT_EQ(s, 0.0);
}

TEST(Borda, ThreeAlternativesHandSum) {
  StatsTable t(3);
  t.record(0, 1, 1.0);
  t.record(0, 2, 2.0);
  t.record(1, 2, 1.0);
  const std::vector<double> s = t.borda_estimates();
  EXPECT_DOUBLE_EQ(s[0], 3.0);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
  EXPECT_DOUBLE_EQ(s[2], -3.0);
}

TEST(Borda, UnsampledPairIsAnError) {
  StatsTable t(3);
  t.record(0, 1, 1.0);
  EXPECT_THROW(t.borda_estimate(0), std::domain_error);
  EXPECT_THROW(t.borda_estimates(), std::domain_error);
}

TEST(Counts, TotalsAndCoverage) {
  StatsTable t(4);
  t.record(0, 1, 1.0);
  t.record(1, 0, 1.0);
  t.record(2, 3, 1.0);
  EXPECT_EQ(t.total_count(), 3);
  EXPECT_EQ(t.min_count(), 0);
  EXPECT_EQ(t.sampled_pairs(), 2u);
  std::int64_t sum = 0;
  for (const PairStats& e : t.entries()) sum += e.n;
  EXPECT_EQ(sum, t.total_count());
}

TEST(Welford, MatchesTwoPassOn1000Samples) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> draw(3.0, 0.25);
  std::vector<double> xs(1000);
  for (double& x : xs) x = draw(rng);
  PairStats s;
  for (double x : xs) s.add(x);
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double m2 = 0.0;
  for (double x : xs) m2 += (x - mean) * (x - mean);
  EXPECT_NEAR(s.mean, mean, 1e-10 * std::abs(mean));
  EXPECT_NEAR(s.m2, m2, 1e-10 * m2);
}

}  // namespace
}  // namespace topkduel
