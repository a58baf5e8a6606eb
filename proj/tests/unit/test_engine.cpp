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

#include "helpers.hpp"
#include "marketsim/engine.hpp"
#include "marketsim/generator.hpp"

using namespace marketsim;
using namespace marketsim::testing;

namespace {

Scenario tiny(StructureKind kind, PlatformId request_platform, PlatformId vehicle_platform) {
  Scenario s;
  s.network = grid(1, 10, 100, 10);
  s.requests = {make_request(*s.network, 1, 2, 7, 0.0, request_platform)};
  s.platforms = {{0, vehicle_platform == 0 ? 1 : 0, {}}, {1, vehicle_platform == 1 ? 1 : 0, {}}};
  for (auto& p : s.platforms) {
    if (p.vehicles == 1) p.placements = {2};
  }
  s.structure.kind = kind;
  return s;
}

// Money identity and the independent tallies of the audit.
void check_books(const EpisodeReport& rep, StructureKind kind) {
  Money revenue, driver, paid, received, auction, profit;
  for (const auto& p : rep.metrics.per_platform) {
    revenue += p.revenue;
    driver += p.driver_cost;
    paid += p.info_paid;
    received += p.info_received;
    auction += p.auction_paid;
    profit += p.profit;
  }
  CHECK(profit == revenue - driver - paid + received - auction);
  CHECK(revenue == rep.audit.fares_collected);
  CHECK(driver == rep.audit.driver_pay_from_odometers);
  CHECK(paid == received);
  CHECK(paid == rep.audit.trade_payments);
  CHECK(auction == rep.audit.auction_log_payments);
  CHECK(rep.metrics.auction_payments == auction);
  if (kind == StructureKind::marketplace) {
    CHECK(rep.metrics.broker_balance == auction);
  } else {
    CHECK(rep.metrics.broker_balance == Money{});
  }
  CHECK(rep.audit.odometer_total == rep.audit.route_leg_total);
  CHECK(rep.audit.request_conservation);
  CHECK(rep.audit.stop_order);
  CHECK(rep.audit.max_wait_excess <= 1e-6);
  CHECK(rep.metrics.served + rep.metrics.expired == rep.metrics.requests);
}

}  // namespace

TEST_CASE("zero requests") {
  Scenario s = tiny(StructureKind::single, 0, 0);
  s.requests.clear();
  const auto rep = run(s);
  CHECK(rep.metrics.total_vmt == 0.0);
  CHECK(rep.metrics.total_trips == 0);
  CHECK(rep.metrics.pct_unsatisfied == 0.0);
  CHECK(rep.metrics.avg_wait == 0.0);
}

TEST_CASE("one request, one vehicle at its origin") {
  const auto rep = run(tiny(StructureKind::single, 0, 0));
  CHECK(rep.metrics.served == 1);
  CHECK(rep.metrics.pct_unsatisfied == 0.0);
  CHECK(rep.metrics.avg_wait == 0.0);
  CHECK(rep.metrics.total_trips == 1);
  CHECK(rep.metrics.total_vmt == doctest::Approx(std::round(500.0 / kMetersPerMile * 1e4) / 1e4));
  CHECK(rep.metrics.per_platform[0].revenue == dedicated_fare(PricingScheme{}, 500, 50));
  check_books(rep, StructureKind::single);
}

TEST_CASE("segmentation strands a request") {
  const auto rep = run(tiny(StructureKind::segmented, 0, 1));
  CHECK(rep.metrics.pct_unsatisfied == 1.0);
  CHECK(rep.metrics.expired == 1);
  const auto single = run(tiny(StructureKind::single, 0, 1));
  CHECK(single.metrics.pct_unsatisfied == 0.0);
  check_books(rep, StructureKind::segmented);
}

TEST_CASE("advance vehicles") {
  const auto net = make_grid(1, 10, 100, 10);
  FleetState idle{0.0, {vehicle_at(1, 0, 4)}};
  const auto ev = advance_vehicles(idle, net, 30);
  CHECK(ev.empty());
  CHECK(idle.vehicles[0].position == 4);
  CHECK(idle.vehicles[0].odometer == 0);
  CHECK(idle.now == 30);

  // 100 m to the pickup, then 200 m more within 30 s.
  Vehicle v = vehicle_at(1, 0, 0);
  const auto r = make_request(net, 7, 1, 9, 0, 0);
  v.riders.push_back(commitment_for(r, 0, Constraints{}));
  v.schedule = {{1, 7, StopKind::pickup}, {9, 7, StopKind::dropoff}};
  FleetState moving{0.0, {v}};
  const auto e2 = advance_vehicles(moving, net, 30);
  REQUIRE(e2.size() == 1);
  CHECK(e2[0].kind == StopKind::pickup);
  CHECK(e2[0].time == doctest::Approx(10));
  CHECK(moving.vehicles[0].position == 3);
  CHECK(moving.vehicles[0].odometer == 300000);
  CHECK(moving.vehicles[0].riders[0].onboard);

  // Dropoff exactly at the epoch boundary executes.
  CHECK(advance_vehicles(moving, net, 30).empty());
  const auto e3 = advance_vehicles(moving, net, 30);
  REQUIRE(e3.size() == 1);
  CHECK(e3[0].kind == StopKind::dropoff);
  CHECK(e3[0].time == doctest::Approx(90));
  CHECK(moving.vehicles[0].odometer == 900000);
  CHECK(moving.vehicles[0].idle());

  // An edge started before the boundary is finished, the overshoot carried.
  const auto slow = make_grid(1, 3, 250, 10);
  Vehicle w = vehicle_at(2, 0, 0);
  const auto far = make_request(slow, 8, 0, 2, 0, 0);
  Commitment c = commitment_for(far, 0, Constraints{});
  c.onboard = true;
  w.riders.push_back(c);
  w.schedule = {{2, 8, StopKind::dropoff}};
  FleetState s{0.0, {w}};
  advance_vehicles(s, slow, 30);
  CHECK(s.vehicles[0].position == 2);
  CHECK(s.vehicles[0].ready_time == doctest::Approx(50));
  CHECK(s.vehicles[0].schedule.size() == 1);
  const auto e4 = advance_vehicles(s, slow, 30);
  REQUIRE(e4.size() == 1);
  CHECK(e4[0].time == doctest::Approx(50));
  CHECK(code_of([&] { advance_vehicles(s, slow, 0); }) == Errc::validation_error);
}

TEST_CASE("expiry boundary and sticky assignment") {
  const auto net = make_grid(1, 5, 100, 10);
  std::vector<Request> rs{make_request(net, 1, 0, 1, 0, 0), make_request(net, 2, 0, 1, 2, 0),
                          make_request(net, 3, 0, 1, 0, 0)};
  rs[2].state = RequestState::assigned;
  CHECK(expire_requests(rs, 301, 300) == std::vector<RequestId>{1});
  CHECK(rs[1].state == RequestState::waiting);  // aged 299 s
  CHECK(rs[2].state == RequestState::assigned);
  CHECK(expire_requests(rs, 303, 300) == std::vector<RequestId>{2});
}

TEST_CASE("episodes balance under every structure") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (const char* label : {"single", "segmented", "bilateral", "central", "marketplace", "cooperative"}) {
      GeneratorOptions o;
      o.grid_rows = o.grid_cols = 6;
      o.requests = 16;
      o.duration_s = 600;
      o.fleet = 4;
      o.platforms = 2;
      o.seed = seed;
      o.structure = MarketStructure::parse(label);
      const auto s = generate_scenario(o);
      const auto rep = run(s);
      INFO(label << " seed " << seed);
      check_books(rep, s.structure.kind);
      // Traded requests are served by the buyer or expire.
      for (const auto& t : rep.trades) {
        const auto& r = *std::find_if(rep.requests.begin(), rep.requests.end(),
                                      [&](const Request& q) { return q.id == t.request; });
        CHECK(r.owner == t.buyer);
        CHECK((r.state == RequestState::served || r.state == RequestState::expired));
      }
      std::set<RequestId> once;
      for (const auto& t : rep.trades) CHECK(once.insert(t.request).second);
      const auto again = run(s);
      CHECK(again.metrics == rep.metrics);
    }
  }
}

TEST_CASE("cooperative summary and characteristic values") {
  GeneratorOptions o;
  o.grid_rows = o.grid_cols = 5;
  o.requests = 10;
  o.duration_s = 300;
  o.fleet = 4;
  o.platforms = 2;
  o.seed = 3;
  o.structure = MarketStructure::parse("cooperative");
  const auto s = generate_scenario(o);
  const auto rep = run(s);
  REQUIRE(rep.metrics.cooperative);
  const auto& c = *rep.metrics.cooperative;
  CHECK(c.players == std::vector<PlatformId>{0, 1});
  CHECK(c.coalition_values.size() == 3);
  CHECK(c.allocations.size() == 3);
  CHECK(c.allocations[0].method == "shapley");
  CHECK(c.theta_profit_is_one);
  CHECK(c.coalition_values[0].second == characteristic_value(s, {0}).dollars());
  CHECK(c.coalition_values[2].second == characteristic_value(s, {0, 1}).dollars());
  CHECK(code_of([&] { characteristic_value(s, {}); }) == Errc::empty_coalition);

  // Grand coalition equals the single-platform market exactly.
  Scenario single = s;
  single.structure = MarketStructure{StructureKind::single, {}};
  const auto sm = run(single).metrics;
  CHECK(sm.total_vmt == rep.metrics.total_vmt);
  CHECK(sm.served == rep.metrics.served);
}

TEST_CASE("fleet placement is per platform") {
  GeneratorOptions o;
  o.platforms = 2;
  o.fleet = 6;
  const auto s = generate_scenario(o);
  const auto both = initial_fleet(s);
  Scenario only_one = s;
  only_one.platforms.erase(only_one.platforms.begin());
  const auto one = initial_fleet(only_one);
  for (const auto& v : one) {
    auto it = std::find_if(both.begin(), both.end(), [&](const Vehicle& x) { return x.id == v.id; });
    REQUIRE(it != both.end());
    CHECK(it->position == v.position);
  }
}

TEST_CASE("scenario validation") {
  Scenario s = tiny(StructureKind::single, 0, 0);
  s.limits.interval_s = 0;
  CHECK(code_of([&] { run(s); }) == Errc::validation_error);
  s = tiny(StructureKind::single, 0, 0);
  s.requests[0].platform = 5;
  CHECK(code_of([&] { run(s); }) == Errc::validation_error);
}
