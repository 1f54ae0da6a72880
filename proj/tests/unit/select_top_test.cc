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

#include "topkduel/select_top.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "support/generators.h"
#include "topkduel/acquisition.h"
#include "topkduel/environment.h"

namespace topkduel {
namespace {

TEST(Select, SingleAlternativeNeedsNoSamples) {
  Environment env = testing::ordered_env({1.0, 0.0});
  std::int64_t samples = -1;
  const std::vector<int> only = {1};
  EXPECT_EQ(select_tournament(env, only, 3, Rng(1), &samples), 1);
  EXPECT_EQ(samples, 0);
}

TEST(Select, NoiselessTournamentFindsTheBest) {
  const std::vector<double> q = {0.2, 0.9, 0.1, 0.5, 0.95, 0.3, 0.7};
  Environment env = testing::ordered_env(q);
  std::vector<int> all(q.size());
  std::iota(all.begin(), all.end(), 0);
  for (int nu : {1, 2, 5}) {
    std::int64_t samples = 0;
    EXPECT_EQ(select_tournament(env, all, nu, Rng(nu), &samples), 4);
    // Six matches for seven entrants.
    EXPECT_EQ(samples, 6 * nu);
  }
}

TEST(Select, LastSeedGetsTheBye) {
  ComparisonSchedule s = select_schedule({0, 1, 2}, 1, Rng(1));
  ASSERT_FALSE(s.done());
  EXPECT_EQ(s.request(), (Comparison{0, 1}));
  s.supply(-1.0);  // 1 beats 0
  ASSERT_FALSE(s.done());
  EXPECT_EQ(s.request(), (Comparison{1, 2}));
  s.supply(2.0);
  ASSERT_TRUE(s.done());
  EXPECT_EQ(s.outcome(), (std::vector<int>{1}));
}

TEST(Select, ExactZeroSumUsesACoin) {
  int first_wins = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ComparisonSchedule s = select_schedule({0, 1}, 2, Rng(seed));
    s.supply(1.0);
    s.supply(-1.0);
    first_wins += s.outcome().front() == 0;
  }
  EXPECT_GT(first_wins, 60);
  EXPECT_LT(first_wins, 140);
}

TEST(Select, MonteCarloMatchesClosedForm) {
  Environment env = testing::matrix_env(2, {0.0, 1.0 / 11.0, -1.0 / 11.0, 0.0}, 0.25, 99);
  const std::vector<int> pair = {0, 1};
  int wins = 0;
  const int runs = 10000;
  for (int r = 0; r < runs; ++r) {
    wins += select_tournament(env, pair, 10, Rng(derive_seed(5, {static_cast<std::uint64_t>(r)}))) == 0;
  }
  EXPECT_NEAR(static_cast<double>(wins) / runs, 0.717, 0.01);
}

TEST(Select, RejectsBadArguments) {
  EXPECT_THROW(select_schedule({}, 1, Rng(1)), std::invalid_argument);
  EXPECT_THROW(select_schedule({0, 1}, 0, Rng(1)), std::invalid_argument);
}

TEST(Top, FullSetNeedsNoSamples) {
  Environment env = testing::ordered_env({0.1, 0.5, 0.3, 0.2});
  std::int64_t samples = -1;
  EXPECT_EQ(top_select(env, 4, 4, 3, Rng(1), &samples),
            (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(samples, 0);
}

TEST(Top, SingleSubpopulationEqualsSelect) {
  const std::vector<double> q = {0.3, 0.1, 0.8, 0.6, 0.2, 0.5};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Environment a = testing::ordered_env(q, 0.3, seed);
    Environment b = testing::ordered_env(q, 0.3, seed);
    std::vector<int> all(q.size());
    std::iota(all.begin(), all.end(), 0);
    std::int64_t sa = 0;
    std::int64_t sb = 0;
    const std::vector<int> top = top_select(a, 6, 1, 2, Rng(seed), &sa);
    const int champ = select_tournament(b, all, 2, Rng(seed), &sb);
    ASSERT_EQ(top.size(), 1u);
    EXPECT_EQ(top.front(), champ);
    EXPECT_EQ(sa, sb);
  }
}

TEST(Top, NoiselessReturnsExactTopK) {
  const std::vector<double> q = {0.42, 0.13, 0.99, 0.57, 0.08, 0.73, 0.31, 0.66, 0.25, 0.88};
  Environment env = testing::ordered_env(q);
  for (int k = 1; k <= 10; ++k) {
    for (int nu : {1, 3}) {
      std::vector<int> got = top_select(env, 10, k, nu, Rng(k * 10 + nu));
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, top_k_indices(q, k)) << "k=" << k;
    }
  }
}

TEST(Top, ScheduleIsDrivenByResultsOnly) {
  // Two identical schedules fed identical results make identical requests.
  ComparisonSchedule a = top_schedule(9, 3, 2, Rng(4));
  ComparisonSchedule b = top_schedule(9, 3, 2, Rng(4));
  testing::Gen gen(8);
  while (!a.done()) {
    ASSERT_FALSE(b.done());
    ASSERT_EQ(a.request(), b.request());
    const double r = gen.normal(0.0, 1.0);
    a.supply(r);
    b.supply(r);
  }
  EXPECT_TRUE(b.done());
  EXPECT_EQ(a.outcome(), b.outcome());
  EXPECT_EQ(a.outcome().size(), 3u);
}

TEST(Top, RejectsBadArguments) {
  EXPECT_THROW(top_schedule(4, 5, 1, Rng(1)), std::invalid_argument);
  EXPECT_THROW(top_schedule(4, 0, 1, Rng(1)), std::invalid_argument);
  EXPECT_THROW(top_schedule(4, 2, 0, Rng(1)), std::invalid_argument);
  ComparisonSchedule done = top_schedule(2, 2, 1, Rng(1));
  EXPECT_TRUE(done.done());
  EXPECT_THROW(done.request(), std::logic_error);
  EXPECT_THROW(done.supply(1.0), std::logic_error);
}

}  // namespace
}  // namespace topkduel
