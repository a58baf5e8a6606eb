// Copyright 2026 The marketsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "marketsim/assignment.hpp"
#include "marketsim/cooperative.hpp"
#include "marketsim/engine.hpp"
#include "marketsim/generator.hpp"
#include "marketsim/lp.hpp"
#include "marketsim/rng.hpp"

namespace {

using namespace marketsim;

Scenario scenario(int requests, int fleet, std::uint64_t seed, std::string_view structure = "segmented") {
  GeneratorOptions o;
  o.requests = requests;
  o.fleet = fleet;
  o.duration_s = 60;
  o.seed = seed;
  o.structure = MarketStructure::parse(structure);
  return generate_scenario(o);
}

void BM_AllPairsShortestPaths(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_grid(n, n, 200.0, 10.0));
}
BENCHMARK(BM_AllPairsShortestPaths)->Arg(10)->Arg(20);

void BM_BuildRtvGraph(benchmark::State& state) {
  const auto s = scenario(static_cast<int>(state.range(0)), 8, 3);
  const auto fleet = initial_fleet(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_rtv_graph(s.requests, fleet, *s.network, 60.0, s.limits));
  }
}
BENCHMARK(BM_BuildRtvGraph)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SolveAssignment(benchmark::State& state) {
  const auto s = scenario(static_cast<int>(state.range(0)), 8, 3);
  const auto graph = build_rtv_graph(s.requests, initial_fleet(s), *s.network, 60.0, s.limits);
  const AssignmentProblem p{&graph, Objective::min_vmt_penalty, s.limits.penalty, s.pricing};
  for (auto _ : state) benchmark::DoNotOptimize(solve_assignment(p));
  state.counters["edges"] = static_cast<double>(graph.edges.size());
}
BENCHMARK(BM_SolveAssignment)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SolveLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(9, "bench-lp");
  LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(-rng.uniform());
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint row;
    for (std::size_t j = 0; j < n; ++j) row.coefficients.push_back(rng.uniform());
    row.rhs = 1.0 + rng.uniform();
    lp.rows.push_back(std::move(row));
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_SolveLp)->Arg(10)->Arg(40);

void BM_Shapley(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<PlatformId> players(n);
  for (std::size_t i = 0; i < n; ++i) players[i] = static_cast<PlatformId>(i);
  const auto game = CoalitionGame::from_function(players, [](CoalitionMask m) {
    return static_cast<double>(__builtin_popcount(m) * __builtin_popcount(m));
  });
  for (auto _ : state) benchmark::DoNotOptimize(shapley(game));
}
BENCHMARK(BM_Shapley)->Arg(4)->Arg(8)->Arg(12);

void BM_EpmAllocate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<PlatformId> players(n);
  for (std::size_t i = 0; i < n; ++i) players[i] = static_cast<PlatformId>(i);
  const auto game = CoalitionGame::from_function(players, [](CoalitionMask m) {
    const double k = __builtin_popcount(m);
    return k * k + k;
  });
  for (auto _ : state) benchmark::DoNotOptimize(epm_allocate(game));
}
BENCHMARK(BM_EpmAllocate)->Arg(3)->Arg(5);

void BM_Episode(benchmark::State& state, const char* structure) {
  GeneratorOptions o;
  o.requests = 40;
  o.fleet = 12;
  o.duration_s = 1200;
  o.seed = 5;
  o.structure = MarketStructure::parse(structure);
  const auto s = generate_scenario(o);
  for (auto _ : state) benchmark::DoNotOptimize(run(s));
}
BENCHMARK_CAPTURE(BM_Episode, segmented, "segmented")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Episode, single, "single")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Episode, bilateral, "bilateral")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Episode, central, "central")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Episode, marketplace, "marketplace")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Episode, cooperative, "cooperative")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
