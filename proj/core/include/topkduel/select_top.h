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

#ifndef TOPKDUEL_SELECT_TOP_H_
#define TOPKDUEL_SELECT_TOP_H_

#include <coroutine>
#include <cstdint>
#include <exception>
#include <span>
#include <utility>
#include <vector>

#include "topkduel/rng.h"

namespace topkduel {

class Environment;

// One requested comparison, in the orientation the result is reported.
struct Comparison {
  int first = 0;
  int second = 0;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// Resumable knockout schedule. Each suspension exposes one comparison to be
// sampled; supply() feeds the outcome back and runs to the next request.
// When done(), outcome() holds the chosen alternatives in emission order.
class ComparisonSchedule {
 public:
  struct promise_type {
    Comparison request;
    double result = 0.0;
    std::vector<int> outcome;
    std::exception_ptr error;

    ComparisonSchedule get_return_object() {
      return ComparisonSchedule(
          std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_never initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }

    struct ResultAwaiter {
      promise_type* promise;
      bool await_ready() const noexcept { return false; }
      void await_suspend(std::coroutine_handle<>) const noexcept {}
      double await_resume() const noexcept { return promise->result; }
    };
    ResultAwaiter yield_value(Comparison c) noexcept {
      request = c;
      return ResultAwaiter{this};
    }
    void return_value(std::vector<int> chosen) { outcome = std::move(chosen); }
    void unhandled_exception() { error = std::current_exception(); }
  };

  ComparisonSchedule() = default;
  ComparisonSchedule(ComparisonSchedule&& other) noexcept
      : handle_(std::exchange(other.handle_, {})) {}
  ComparisonSchedule& operator=(ComparisonSchedule&& other) noexcept {
    if (this != &other) {
      reset();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  ComparisonSchedule(const ComparisonSchedule&) = delete;
  ComparisonSchedule& operator=(const ComparisonSchedule&) = delete;
  ~ComparisonSchedule() { reset(); }

  bool valid() const { return static_cast<bool>(handle_); }
  bool done() const;
  Comparison request() const;
  void supply(double result);
  const std::vector<int>& outcome() const;

 private:
  explicit ComparisonSchedule(std::coroutine_handle<promise_type> h)
      : handle_(h) {}
  void reset() {
    if (handle_) handle_.destroy();
    handle_ = {};
  }
  void rethrow() const;

  std::coroutine_handle<promise_type> handle_;
};

// Single-elimination bracket over `alternatives`: neighbours (0,1), (2,3), ...
// meet each round and an odd last seed gets a bye. A match sums nu samples
// of (a, b); a positive sum advances a, negative advances b, zero is a coin
// flip. The outcome is the champion.
ComparisonSchedule select_schedule(std::vector<int> alternatives, int nu,
                                   Rng rng);

// Top-k by sub-population knockout. Indices 0..K-1 are split into k
// contiguous near-equal blocks; each block's champion is placed in a ranked
// shortlist by binary insertion (nu-sample matches). The shortlist head is
// emitted, and only its block is re-run to supply a replacement. The
// outcome lists the k emitted alternatives in order.
ComparisonSchedule top_schedule(int num_alternatives, int k, int nu, Rng rng);

struct TournamentResult {
  std::vector<int> chosen;
  std::int64_t samples = 0;
};

// Drives a schedule against an environment until it completes.
TournamentResult run_schedule(ComparisonSchedule schedule, Environment& env);

int select_tournament(Environment& env, std::span<const int> alternatives,
                      int nu, Rng rng, std::int64_t* samples = nullptr);

std::vector<int> top_select(Environment& env, int num_alternatives, int k,
                            int nu, Rng rng, std::int64_t* samples = nullptr);

}  // namespace topkduel

#endif  // TOPKDUEL_SELECT_TOP_H_
