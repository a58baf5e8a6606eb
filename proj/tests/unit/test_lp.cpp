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
#include <array>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "marketsim/error.hpp"
#include "marketsim/lp.hpp"
#include "marketsim/rng.hpp"

using namespace marketsim;

TEST_CASE("canonical lp cases") {
  LinearProgram bounded{{1.0}, {{{1.0}, Relation::greater_equal, 3.0}}, {}};
  auto r = solve_lp(bounded);
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(3.0));

  LinearProgram infeasible{{0.0}, {{{1.0}, Relation::greater_equal, 1.0}, {{1.0}, Relation::less_equal, 0.0}}, {}};
  CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

  LinearProgram unbounded{{-1.0}, {{{1.0}, Relation::greater_equal, 0.0}}, {}};
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);
}

TEST_CASE("lp with equality, free variable and shifted bounds") {
  // min x + 2y s.t. x + y = 4, x <= 3, y >= 0.5 (lower bound), x free.
  LinearProgram lp;
  lp.objective = {1.0, 2.0};
  lp.rows = {{{1.0, 1.0}, Relation::equal, 4.0}, {{1.0, 0.0}, Relation::less_equal, 3.0}};
  lp.lower_bounds = {kFreeVariable, 0.5};
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x[0] == doctest::Approx(3.0));
  CHECK(r.x[1] == doctest::Approx(1.0));
  CHECK(r.value == doctest::Approx(5.0));

  LinearProgram neg;
  neg.objective = {1.0};
  neg.lower_bounds = {kFreeVariable};
  neg.rows = {{{1.0}, Relation::greater_equal, -7.0}};
  const auto rn = solve_lp(neg);
  CHECK(rn.status == LpStatus::optimal);
  CHECK(rn.x[0] == doctest::Approx(-7.0));
}

TEST_CASE("lp dimension checks") {
  LinearProgram lp{{1.0, 2.0}, {{{1.0}, Relation::less_equal, 1.0}}, {}};
  CHECK_THROWS_AS(solve_lp(lp), Error);
  LinearProgram lb{{1.0}, {}, {0.0, 0.0}};
  CHECK_THROWS_AS(solve_lp(lb), Error);
}

TEST_CASE("lp matches brute-force vertex enumeration in two dimensions") {
  Rng rng(11, "lp");
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp;
    lp.objective = {rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
    std::vector<std::array<double, 3>> halfplanes;  // a x + b y <= c
    for (int k = 0; k < 4; ++k) {
      const double a = rng.uniform() * 4 - 2, b = rng.uniform() * 4 - 2, c = rng.uniform() * 10;
      lp.rows.push_back({{a, b}, Relation::less_equal, c});
      halfplanes.push_back({a, b, c});
    }
    // Box keeps the problem bounded.
    for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
      lp.rows.push_back({{a, b}, Relation::less_equal, 10.0});
      halfplanes.push_back({a, b, 10.0});
    }
    halfplanes.push_back({-1, 0, 0});
    halfplanes.push_back({0, -1, 0});
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < halfplanes.size(); ++i) {
      for (std::size_t j = i + 1; j < halfplanes.size(); ++j) {
        const auto& p = halfplanes[i];
        const auto& q = halfplanes[j];
        const double det = p[0] * q[1] - p[1] * q[0];
        if (std::abs(det) < 1e-12) continue;
        const double x = (p[2] * q[1] - p[1] * q[2]) / det;
        const double y = (p[0] * q[2] - p[2] * q[0]) / det;
        bool ok = true;
        for (const auto& h : halfplanes) ok = ok && h[0] * x + h[1] * y <= h[2] + 1e-9;
        if (ok) best = std::min(best, lp.objective[0] * x + lp.objective[1] * y);
      }
    }
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);  // origin is always feasible
    CHECK(r.value == doctest::Approx(best).epsilon(1e-9));
  }
}
