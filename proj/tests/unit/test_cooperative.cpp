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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "marketsim/cooperative.hpp"
#include "marketsim/rng.hpp"

using namespace marketsim;
using namespace marketsim::testing;

namespace {

std::vector<PlatformId> ids(std::size_t n) {
  std::vector<PlatformId> p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

std::vector<double> permutation_shapley(const CoalitionGame& g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> x(g.size(), 0.0);
  double count = 0;
  do {
    CoalitionMask s = 0;
    for (std::size_t i : order) {
      x[i] += g.value(s | (1U << i)) - g.value(s);
      s |= 1U << i;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& v : x) v /= count;
  return x;
}

CoalitionGame random_superadditive(Rng& rng, std::size_t n) {
  // v(S) = sum of positive standalone values plus a synergy that grows with |S|.
  std::vector<double> base(n);
  for (double& b : base) b = 1.0 + rng.uniform() * 20.0;
  const double synergy = rng.uniform() * 5.0;
  return CoalitionGame::from_function(ids(n), [&](CoalitionMask m) {
    double v = 0.0;
    const int k = __builtin_popcount(m);
    for (std::size_t i = 0; i < n; ++i) {
      if ((m >> i) & 1U) v += base[i];
    }
    return v + synergy * (k - 1) * k;
  });
}

}  // namespace

TEST_CASE("game construction and keys") {
  const CoalitionGame g({3, 1}, {10, 20, 36});
  CHECK(g.key(3) == "1,3");
  CHECK(g.key(1) == "3");
  CHECK(g.value(0) == 0.0);
  CHECK(code_of([] { CoalitionGame({}, {}); }) == Errc::empty_coalition);
  CHECK(code_of([] { CoalitionGame({1, 2}, {1, 2}); }) == Errc::dimension_mismatch);
  CHECK(code_of([] { CoalitionGame(ids(13), std::vector<double>((1U << 13) - 1, 0.0)); }) == Errc::too_large);
}

TEST_CASE("shapley examples and oracle") {
  const CoalitionGame sym({1, 2}, {10, 10, 30});
  const auto s = shapley(sym);
  CHECK(s.x[0] == doctest::Approx(15));
  CHECK(s.x[1] == doctest::Approx(15));

  const auto three = CoalitionGame::from_function(ids(3), [](CoalitionMask m) {
    switch (__builtin_popcount(m)) {
      case 1: return m == 1 ? 1.0 : m == 2 ? 2.0 : 3.0;
      case 2: return 6.0;
      default: return 12.0;
    }
  });
  const auto oracle = permutation_shapley(three);
  const auto x = shapley(three);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(x.x[i] - oracle[i]) < 1e-9);

  Rng rng(4, "shapley");
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<double> values((1U << n) - 1);
    for (double& v : values) v = rng.uniform() * 100 - 20;
    const CoalitionGame g(ids(n), values);
    const auto xs = shapley(g);
    const auto ox = permutation_shapley(g);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(xs.x[i] - ox[i]) < 1e-9);
    CHECK(std::abs(xs.total() - g.value(g.grand())) < 1e-9);
  }
}

TEST_CASE("shapley axioms") {
  // Null player 3 contributes nothing.
  const auto g = CoalitionGame::from_function(ids(3), [](CoalitionMask m) {
    const CoalitionMask core = m & 3U;
    return core == 3 ? 10.0 : core == 0 ? 0.0 : 4.0;
  });
  const auto x = shapley(g);
  CHECK(std::abs(x.x[2]) < 1e-12);
  CHECK(x.x[0] == doctest::Approx(x.x[1]));

  Rng rng(8, "additivity");
  std::vector<double> a(15), b(15), sum(15);
  for (std::size_t k = 0; k < 15; ++k) {
    a[k] = rng.uniform();
    b[k] = rng.uniform();
    sum[k] = a[k] + b[k];
  }
  const auto xa = shapley(CoalitionGame(ids(4), a));
  const auto xb = shapley(CoalitionGame(ids(4), b));
  const auto xs = shapley(CoalitionGame(ids(4), sum));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(xs.x[i] - xa.x[i] - xb.x[i]) < 1e-12);
}

TEST_CASE("epm") {
  const CoalitionGame g({1, 2}, {10, 20, 36});
  const auto r = epm_allocate(g);
  REQUIRE_FALSE(r.core_empty());
  CHECK(std::abs(r.allocation->x[0] - 12) < 1e-9);
  CHECK(std::abs(r.allocation->x[1] - 24) < 1e-9);
  CHECK(std::abs(r.allocation->spread) < 1e-9);

  const CoalitionGame sym({1, 2}, {10, 10, 30});
  const auto rs = epm_allocate(sym);
  CHECK(rs.allocation->x[0] == doctest::Approx(15));

  const double eps = 0.001;
  const auto majority = CoalitionGame::from_function(
      ids(3), [&](CoalitionMask m) { return __builtin_popcount(m) >= 2 ? 1.0 : eps; });
  CHECK(epm_allocate(majority).core_empty());
  const auto zero = CoalitionGame::from_function(
      ids(3), [](CoalitionMask m) { return __builtin_popcount(m) >= 2 ? 1.0 : 0.0; });
  CHECK(code_of([&] { epm_allocate(zero); }) == Errc::nonpositive_standalone);

  const CoalitionGame solo({7}, {5});
  const auto rsolo = epm_allocate(solo);
  CHECK(rsolo.allocation->x[0] == doctest::Approx(5));
}

TEST_CASE("core allocations lie in the core and epm is scale covariant") {
  Rng rng(21, "core");
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    const auto g = random_superadditive(rng, n);
    const auto e = epm_allocate(g);
    REQUIRE_FALSE(e.core_empty());
    CHECK(in_core(g, *e.allocation, 1e-6));
    std::vector<double> w(n);
    for (double& x : w) x = 0.1 + rng.uniform();
    const auto c = contribution_allocate(g, w);
    REQUIRE_FALSE(c.core_empty());
    CHECK(in_core(g, *c.allocation, 1e-6));

    const double k = 0.5 + rng.uniform() * 3;
    std::vector<double> scaled;
    for (CoalitionMask m = 1; m <= g.grand(); ++m) scaled.push_back(g.value(m) * k);
    const auto es = epm_allocate(CoalitionGame(g.players(), scaled));
    CHECK(es.allocation->spread == doctest::Approx(e.allocation->spread).epsilon(1e-6));
    // The relative-profit vector is unique at the optimum only up to ties;
    // the scaled allocation must still be an optimal EPM point of the original.
    Allocation back = *es.allocation;
    for (double& x : back.x) x /= k;
    CHECK(in_core(g, back, 1e-6));
  }
}

TEST_CASE("contribution weights and allocation") {
  const auto w = contribution_weights({10, 30}, {20, 40});
  CHECK(w.theta_cost == doctest::Approx(0.5));
  CHECK(w.theta_profit == doctest::Approx(1.0));
  CHECK(w.w[0] == doctest::Approx(0.3125));
  CHECK(w.w[1] == doctest::Approx(0.6875));
  CHECK(contribution_weights({4}, {9}).w[0] == doctest::Approx(1.0));
  const auto same = contribution_weights({5, 5}, {8, 8});
  CHECK(same.w[0] == doctest::Approx(0.5));
  CHECK(code_of([] { contribution_weights({0, 0}, {1, 1}); }) == Errc::zero_denominator);
  CHECK(code_of([] { contribution_weights({1, 1}, {1, 1}); }) == Errc::zero_denominator);
  CHECK(code_of([] { contribution_weights({-1}, {1}); }) == Errc::negative_input);

  const CoalitionGame g({1, 2}, {10, 20, 36});
  const auto r = contribution_allocate(g, {0.5, 0.5});
  REQUIRE_FALSE(r.core_empty());
  CHECK(std::abs(r.allocation->x[0] - 13) < 1e-9);
  CHECK(std::abs(r.allocation->x[1] - 23) < 1e-9);
  CHECK(std::abs(r.allocation->spread) < 1e-9);
  CHECK(code_of([&] { contribution_allocate(g, {1, 0}); }) == Errc::zero_weight);
  const CoalitionGame sym({1, 2}, {10, 10, 30});
  CHECK(contribution_allocate(sym, {0.5, 0.5}).allocation->x[1] == doctest::Approx(15));
}

TEST_CASE("in_core") {
  const CoalitionGame g({1, 2}, {10, 20, 36});
  CHECK(in_core(g, Allocation{{1, 2}, {12, 24}, 0}, 1e-9));
  CHECK_FALSE(in_core(g, Allocation{{1, 2}, {36, 0}, 0}, 1e-9));
  const CoalitionGame solo({1}, {4});
  CHECK(in_core(solo, Allocation{{1}, {4}, 0}, 1e-9));
}
