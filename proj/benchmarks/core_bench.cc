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

#include <benchmark/benchmark.h>

#include <vector>

#include "topkduel/acquisition.h"
#include "topkduel/environment.h"
#include "topkduel/policy.h"
#include "topkduel/thurstone.h"

namespace topkduel {
namespace {

Environment bench_env(int k, double d = 0.0) {
  ThurstoneGenConfig g;
  g.num_alternatives = k;
  g.perturbation = d;
  return generate_thurstone(g, 42);
}

StatsTable filled_table(Environment& env, int per_pair) {
  const int k = env.size();
  StatsTable t(k);
  for (const PairKey& p : all_pairs(k)) {
    for (int n = 0; n < per_pair; ++n) t.record(p.first, p.second, env.sample(p.first, p.second));
  }
  return t;
}

void BM_FitFromBorda(benchmark::State& state) {
  Environment env = bench_env(static_cast<int>(state.range(0)));
  const StatsTable t = filled_table(env, 5);
  const ThurstoneParams init = init_params(t);
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(t, init));
}
BENCHMARK(BM_FitFromBorda)->Arg(10)->Arg(30)->Arg(100);

// One extra sample, then a warm-started refit: the per-step cost.
void BM_FitWarmStart(benchmark::State& state) {
  Environment env = bench_env(static_cast<int>(state.range(0)));
  StatsTable t = filled_table(env, 5);
  const ThurstoneParams prev = fit_mle(t, init_params(t)).params;
  t.record(0, 1, env.sample(0, 1));
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(t, prev));
}
BENCHMARK(BM_FitWarmStart)->Arg(10)->Arg(30)->Arg(100);

void BM_AepcsScan(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Environment env = bench_env(k);
  const StatsTable t = filled_table(env, 5);
  const ScorePosterior post = score_posterior_independent(t);
  const int sel_k = k * 2 / 5;
  const std::vector<int> sel = top_k_indices(post.mean, sel_k);
  const double c = threshold_c(post, sel_k);
  const std::vector<double> sigmas = sample_sigmas(t);
  for (auto _ : state) benchmark::DoNotOptimize(best_aepcs_pair(post, sigmas, t, sel, c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(num_pairs(k)));
}
BENCHMARK(BM_AepcsScan)->Arg(10)->Arg(30)->Arg(100);

void BM_PolicyStep(benchmark::State& state) {
  const Method method = static_cast<Method>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    Environment env = bench_env(10, 0.1);
    PolicyConfig c;
    c.method = method;
    c.num_alternatives = 10;
    c.select = 4;
    c.budget = 400;
    Policy policy(c);
    for (int s = 0; s < 135; ++s) {
      const Comparison p = policy.next_pair();
      policy.observe(p, env.sample(p.first, p.second));
    }
    state.ResumeTiming();
    while (policy.phase() != Phase::kFinished) {
      const Comparison p = policy.next_pair();
      policy.observe(p, env.sample(p.first, p.second));
    }
  }
  state.SetItemsProcessed(state.iterations() * (400 - 135));
  state.SetLabel(std::string(method_name(method)));
}
BENCHMARK(BM_PolicyStep)
    ->Arg(static_cast<int>(Method::kPocbam))
    ->Arg(static_cast<int>(Method::kMlPocbam))
    ->Arg(static_cast<int>(Method::kHybrid))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace topkduel

BENCHMARK_MAIN();
