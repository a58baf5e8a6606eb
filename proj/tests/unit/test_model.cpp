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

#include "doctest.h"
#include "marketsim/error.hpp"
#include "marketsim/model.hpp"
#include "marketsim/money.hpp"
#include "marketsim/rng.hpp"

using namespace marketsim;

namespace {
constexpr double kMile = kMetersPerMile;
}

TEST_CASE("money fixed point") {
  CHECK(Money::from_dollars(9.55).mills() == 9550);
  CHECK(Money::from_dollars(-0.0005).mills() == -1);
  CHECK(Money::from_mills(1672).to_string() == "1.6720");
  CHECK(Money::from_mills(-5).to_string() == "-0.0050");
  CHECK((Money::from_mills(3) + Money::from_mills(4)).mills() == 7);
}

TEST_CASE("dedicated fare") {
  const PricingScheme s;
  CHECK(dedicated_fare(s, 2 * kMile, 600).mills() == 9550);
  CHECK(dedicated_fare(s, 0.5 * kMile, 120).mills() == 8000);
  CHECK(dedicated_fare(s, 0, 0).mills() == 8000);
  CHECK_THROWS_AS(dedicated_fare(s, -1, 0), Error);
}

TEST_CASE("shared fare") {
  const PricingScheme s;
  CHECK(shared_fare(s, 2 * kMile, 600).mills() == 7840);
  CHECK(shared_fare(s, 10 * kMile, 2400).mills() == 19720);
  CHECK(shared_fare(s, 0, 0).mills() == 7840);
}

TEST_CASE("driver pay") {
  const PricingScheme s;
  CHECK(driver_pay(s, kMile, 600).mills() == 6449);
  CHECK(driver_pay(s, 0, 0).mills() == 0);
  CHECK(driver_pay(s, 3 * kMile, 0).mills() == 4287);
  try {
    driver_pay(s, 0, -1);
    FAIL("expected NegativeInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::negative_input);
  }
}

TEST_CASE("pricing defaults and validation") {
  PricingScheme s;
  CHECK(s.ded_base == 2.55);
  CHECK(s.shr_min_fare == 7.84);
  CHECK(s.pay_per_min == 0.502);
  s.shr_base = -1;
  CHECK_THROWS_AS(s.validate(), Error);
  const Constraints c;
  CHECK(c.detour_factor == 1.25);
  CHECK(c.max_wait_s == 300);
  CHECK(c.max_pickup_s == 300);
  CHECK(c.penalty == 10);
  CHECK(c.gamma == 0.1);
  CHECK(c.interval_s == 30);
}

TEST_CASE("fares are monotone and shared never exceeds dedicated") {
  const PricingScheme s;
  Rng rng(3, "fares");
  for (int k = 0; k < 500; ++k) {
    const double d = rng.uniform() * 20 * kMile;
    const double t = rng.uniform() * 3600;
    const double dd = d + rng.uniform() * kMile;
    const double tt = t + rng.uniform() * 600;
    CHECK(dedicated_fare(s, d, t) <= dedicated_fare(s, dd, tt));
    CHECK(shared_fare(s, d, t) <= shared_fare(s, dd, tt));
    CHECK(shared_fare(s, d, t) <= dedicated_fare(s, d, t));
  }
}

TEST_CASE("trip profit examples") {
  // A 2-mile straight road driven at 2 miles per 10 minutes.
  const double speed = 2 * kMile / 600.0;
  const auto net = make_grid(1, 2, 2 * kMile, speed);
  const Request r = make_request(net, 1, 0, 1, 0.0, 0);
  Trip solo;
  solo.requests = {1};
  solo.riders_on_route = 1;
  solo.total_distance = solo.added_distance = r.direct_distance;
  CHECK(trip_profit(PricingScheme{}, solo, {r}, net).mills() == 1672);

  const auto long_net = make_grid(1, 2, 10 * kMile, 10 * kMile / 2400.0);
  const Request a = make_request(long_net, 1, 0, 1, 0.0, 0);
  const Request b = make_request(long_net, 2, 0, 1, 0.0, 1);
  Trip pair;
  pair.requests = {1, 2};
  pair.riders_on_route = 2;
  pair.total_distance = pair.added_distance = a.direct_distance;
  CHECK(trip_profit(PricingScheme{}, pair, {a, b}, long_net).mills() == 5070);

  Trip zero;
  zero.requests = {1};
  zero.riders_on_route = 1;
  Request degenerate = r;
  degenerate.direct_distance = 0;
  degenerate.direct_duration = 0;
  CHECK(trip_profit(PricingScheme{}, zero, {degenerate}, net).mills() == 8000);
}

TEST_CASE("request construction") {
  const auto net = make_grid(2, 2, 100, 10);
  const auto r = make_request(net, 5, 0, 3, 12.0, 1);
  CHECK(r.direct_distance == 200000);
  CHECK(r.direct_duration == doctest::Approx(20.0));
  CHECK(r.owner == 1);
  CHECK(r.state == RequestState::waiting);
  CHECK_THROWS_AS(make_request(net, 6, 2, 2, 0.0, 0), Error);
}

TEST_CASE("rng streams are independent and reproducible") {
  Rng a(42, "x"), b(42, "x"), c(42, "y");
  const auto va = a.next();
  CHECK(va == b.next());
  CHECK(va != c.next());
  Rng d(1, "below");
  for (int k = 0; k < 1000; ++k) CHECK(d.below(7) < 7);
  std::vector<int> v{1, 2, 3, 4, 5};
  Rng e(9, "shuffle");
  e.shuffle(v);
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<int>{1, 2, 3, 4, 5});
}
