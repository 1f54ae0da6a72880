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
#include <stdexcept>
#include <string>

#include "topkduel/environment.h"

namespace topkduel {

bool ComparisonSchedule::done() const {
  if (!handle_) throw std::logic_error("empty comparison schedule");
  return handle_.done();
}

void ComparisonSchedule::rethrow() const {
  if (handle_ && handle_.promise().error) {
    std::rethrow_exception(handle_.promise().error);
  }
}

Comparison ComparisonSchedule::request() const {
  if (done()) throw std::logic_error("schedule already finished");
  return handle_.promise().request;
}

void ComparisonSchedule::supply(double result) {
  if (done()) throw std::logic_error("schedule already finished");
  handle_.promise().result = result;
  handle_.resume();
  rethrow();
}

const std::vector<int>& ComparisonSchedule::outcome() const {
  if (!done()) throw std::logic_error("schedule still running");
  rethrow();
  return handle_.promise().outcome;
}

namespace {

ComparisonSchedule select_impl(std::vector<int> alternatives, int nu, Rng rng) {
  std::vector<int> round = std::move(alternatives);
  while (round.size() > 1) {
    std::vector<int> next;
    for (std::size_t m = 0; m + 1 < round.size(); m += 2) {
      const int a = round[m];
      const int b = round[m + 1];
      double sum = 0.0;
      for (int rep = 0; rep < nu; ++rep) sum += co_yield Comparison{a, b};
      next.push_back(sum > 0.0 ? a : sum < 0.0 ? b : (rng.coin() ? a : b));
    }
    if (round.size() % 2 == 1) next.push_back(round.back());
    round = std::move(next);
  }
  co_return std::vector<int>{round.front()};
}

ComparisonSchedule top_impl(int num_alternatives, int k, int nu, Rng rng) {
  // Contiguous blocks; the first K % k blocks get one extra member.
  std::vector<std::vector<int>> blocks(k);
  {
    const int base = num_alternatives / k;
    const int extra = num_alternatives % k;
    int next = 0;
    for (int b = 0; b < k; ++b) {
      const int len = base + (b < extra ? 1 : 0);
      for (int m = 0; m < len; ++m) blocks[b].push_back(next++);
    }
  }
  std::vector<int> block_of(num_alternatives);
  for (int b = 0; b < k; ++b) {
    for (int a : blocks[b]) block_of[a] = b;
  }

  std::vector<int> emitted;
  std::vector<int> shortlist;  // ranked best-first
  std::vector<int> to_select(k);
  for (int b = 0; b < k; ++b) to_select[b] = b;

  while (static_cast<int>(emitted.size()) < k) {
    std::size_t remaining = 0;
    for (const auto& block : blocks) remaining += block.size();
    const std::size_t needed = k - emitted.size();
    if (needed == remaining) {
      // Everyone left gets emitted; no comparisons needed.
      for (int a : shortlist) emitted.push_back(a);
      std::vector<int> rest;
      for (const auto& block : blocks) {
        for (int a : block) {
          if (std::find(shortlist.begin(), shortlist.end(), a) == shortlist.end()) {
            rest.push_back(a);
          }
        }
      }
      std::sort(rest.begin(), rest.end());
      emitted.insert(emitted.end(), rest.begin(), rest.end());
      break;
    }

    for (int b : to_select) {
      // Knockout within block b.
      std::vector<int> round = blocks[b];
      while (round.size() > 1) {
        std::vector<int> next;
        for (std::size_t m = 0; m + 1 < round.size(); m += 2) {
          const int x = round[m];
          const int y = round[m + 1];
          double sum = 0.0;
          for (int rep = 0; rep < nu; ++rep) sum += co_yield Comparison{x, y};
          next.push_back(sum > 0.0 ? x : sum < 0.0 ? y : (rng.coin() ? x : y));
        }
        if (round.size() % 2 == 1) next.push_back(round.back());
        round = std::move(next);
      }
      const int champion = round.front();

      // Binary insertion into the ranked shortlist.
      std::size_t lo = 0;
      std::size_t hi = shortlist.size();
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        double sum = 0.0;
        for (int rep = 0; rep < nu; ++rep) {
          sum += co_yield Comparison{champion, shortlist[mid]};
        }
        const bool wins = sum > 0.0 || (sum == 0.0 && rng.coin());
        if (wins) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      shortlist.insert(shortlist.begin() + static_cast<std::ptrdiff_t>(lo),
                       champion);
    }
    to_select.clear();

    const int best = shortlist.front();
    shortlist.erase(shortlist.begin());
    emitted.push_back(best);
    std::vector<int>& home = blocks[block_of[best]];
    home.erase(std::find(home.begin(), home.end(), best));
    if (!home.empty()) to_select.push_back(block_of[best]);
  }
  co_return emitted;
}

}  // namespace

ComparisonSchedule select_schedule(std::vector<int> alternatives, int nu,
                                   Rng rng) {
  if (alternatives.empty()) throw std::invalid_argument("nothing to select from");
  if (nu < 1) throw std::invalid_argument("nu must be at least 1");
  return select_impl(std::move(alternatives), nu, rng);
}

ComparisonSchedule top_schedule(int num_alternatives, int k, int nu, Rng rng) {
  if (num_alternatives < 1 || k < 1 || k > num_alternatives) {
    throw std::invalid_argument("top_schedule needs 1 <= k <= K");
  }
  if (nu < 1) throw std::invalid_argument("nu must be at least 1");
  return top_impl(num_alternatives, k, nu, rng);
}

TournamentResult run_schedule(ComparisonSchedule schedule, Environment& env) {
  TournamentResult result;
  while (!schedule.done()) {
    const Comparison c = schedule.request();
    const double r = env.sample(c.first, c.second);
    ++result.samples;
    schedule.supply(r);
  }
  result.chosen = schedule.outcome();
  return result;
}

int select_tournament(Environment& env, std::span<const int> alternatives,
                      int nu, Rng rng, std::int64_t* samples) {
  TournamentResult r = run_schedule(
      select_schedule(std::vector<int>(alternatives.begin(), alternatives.end()),
                      nu, rng),
      env);
  if (samples != nullptr) *samples = r.samples;
  return r.chosen.front();
}

std::vector<int> top_select(Environment& env, int num_alternatives, int k,
                            int nu, Rng rng, std::int64_t* samples) {
  TournamentResult r =
      run_schedule(top_schedule(num_alternatives, k, nu, rng), env);
  if (samples != nullptr) *samples = r.samples;
  return r.chosen;
}

}  // namespace topkduel
