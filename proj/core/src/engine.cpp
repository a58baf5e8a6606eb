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

#include "marketsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "marketsim/error.hpp"

namespace marketsim {
namespace {

constexpr double kTimeSlack = 1e-9;
// Owner of requests the marketplace broker still holds.
constexpr PlatformId kBroker = std::numeric_limits<PlatformId>::max();

double quantize4(double v) { return std::round(v * 10000.0) / 10000.0; }

Money odometer_pay(const PricingScheme& pricing, const RoadNetwork& net, Millimeters odometer) {
  return driver_pay(pricing, static_cast<double>(odometer) / 1000.0, net.travel_time(odometer));
}

struct Ledger {
  Money revenue, driver_cost, info_paid, info_received, auction_paid;
  std::int64_t trips = 0, served = 0, requests = 0;
  std::set<VehicleId> contributing;
  Money contributed_request_value;
};

// Mutable state of one episode plus the per-structure stages.
class Episode {
 public:
  explicit Episode(const Scenario& s)
      : s_(s), net_(*s.network), report_() {
    requests_ = s.requests;
    std::sort(requests_.begin(), requests_.end(), [](const Request& a, const Request& b) {
      return a.request_time != b.request_time ? a.request_time < b.request_time : a.id < b.id;
    });
    for (std::size_t k = 0; k < requests_.size(); ++k) {
      requests_[k].state = RequestState::waiting;
      requests_[k].owner = requests_[k].platform;
      by_id_[requests_[k].id] = k;
    }
    fleet_.vehicles = initial_fleet(s);
    for (std::size_t k = 0; k < fleet_.vehicles.size(); ++k) {
      vehicle_index_[fleet_.vehicles[k].id] = k;
      anchor_.push_back(fleet_.vehicles[k].position);
    }
    for (const auto& p : s.platforms) ledger_[p.id];
  }

  EpisodeReport run() {
    const double dt = s_.limits.interval_s;
    std::size_t next_admit = 0;
    for (std::size_t epoch = 0;; ++epoch) {
      const double now = static_cast<double>(epoch) * dt;
      fleet_.now = now;
      epoch_ = epoch;
      const bool all_admitted = next_admit == requests_.size();
      if (now > s_.horizon_s && all_admitted && !pending() && all_idle()) break;

      const auto expired = expire_requests(requests_, now, s_.limits.max_wait_s);
      expired_ += expired.size();
      while (next_admit < requests_.size() && requests_[next_admit].request_time <= now + kTimeSlack) {
        Request& r = requests_[next_admit++];
        if (s_.structure.kind == StructureKind::marketplace) r.owner = kBroker;
        ++admitted_;
        ++ledger_[r.platform].requests;
      }
      stage(now);

      for (const auto& ev : advance_vehicles(fleet_, net_, dt)) record_stop(ev);
      fleet_.now = now;  // advance_vehicles moved it; the loop recomputes it
      check_conservation();
      report_.audit.epochs = epoch + 1;
    }
    return finish();
  }

 private:
  bool pending() const {
    return std::any_of(requests_.begin(), requests_.end(), [&](const Request& r) {
      return (r.state == RequestState::waiting && admitted(r)) || r.state == RequestState::assigned ||
             r.state == RequestState::onboard;
    });
  }
  bool all_idle() const {
    return std::all_of(fleet_.vehicles.begin(), fleet_.vehicles.end(),
                       [](const Vehicle& v) { return v.idle(); });
  }
  bool admitted(const Request& r) const { return r.request_time <= fleet_.now + kTimeSlack; }

  std::vector<std::size_t> waiting_where(const std::function<bool(const Request&)>& pred) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < requests_.size(); ++k) {
      const Request& r = requests_[k];
      if (r.state == RequestState::waiting && admitted(r) && pred(r)) out.push_back(k);
    }
    return out;
  }
  std::vector<std::size_t> vehicles_where(const std::function<bool(const Vehicle&)>& pred) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < fleet_.vehicles.size(); ++k) {
      if (pred(fleet_.vehicles[k])) out.push_back(k);
    }
    return out;
  }

  MarketContext context(double now) const {
    return MarketContext{net_, s_.limits, s_.pricing, now, epoch_};
  }

  std::vector<Request> snapshot_requests(const std::vector<std::size_t>& idx) const {
    std::vector<Request> out;
    for (std::size_t k : idx) out.push_back(requests_[k]);
    return out;
  }
  std::vector<Vehicle> snapshot_vehicles(const std::vector<std::size_t>& idx) const {
    std::vector<Vehicle> out;
    for (std::size_t k : idx) out.push_back(fleet_.vehicles[k]);
    return out;
  }

  // Matches the given requests to the given vehicles as one platform.
  void match(const std::vector<std::size_t>& req, const std::vector<std::size_t>& veh, double now) {
    if (req.empty() || veh.empty()) return;
    const auto rs = snapshot_requests(req);
    const auto vs = snapshot_vehicles(veh);
    const RtvGraph graph = build_rtv_graph(rs, vs, net_, now, s_.limits);
    const Assignment a =
        solve_assignment(AssignmentProblem{&graph, s_.objective, s_.limits.penalty, s_.pricing});
    apply(graph, a, now);
  }

  void apply(const RtvGraph& graph, const Assignment& a, double now) {
    for (std::size_t e : a.chosen) {
      const TripVehicleEdge& edge = graph.edges[e];
      const std::size_t vi = vehicle_index_.at(graph.vehicles[edge.vehicle].id);
      Vehicle& v = fleet_.vehicles[vi];
      if (v.idle()) ++ledger_[v.platform].trips;
      report_.audit.route_leg_total += net_.distance(anchor_[vi], v.position);
      anchor_[vi] = v.position;
      v.schedule = edge.plan.route;
      const bool shared = edge.plan.riders_on_route >= 2;
      for (RequestId id : edge.plan.requests) {
        Request& r = requests_[by_id_.at(id)];
        if (r.owner == kBroker) {
          throw Error(Errc::validation_error, "broker request matched before sale");
        }
        r.state = RequestState::assigned;
        v.riders.push_back(commitment_for(r, now, s_.limits));
        fare_[id] = rider_fare(s_.pricing, r, shared);
      }
      matched_.insert(v.id);
    }
  }

  void segmented(double now) {
    for (const auto& p : s_.platforms) {
      match(waiting_where([&](const Request& r) { return r.owner == p.id; }),
            vehicles_where([&](const Vehicle& v) { return v.platform == p.id; }), now);
    }
  }

  void stage(double now) {
    matched_.clear();
    switch (s_.structure.kind) {
      case StructureKind::single:
        match(waiting_where([](const Request&) { return true; }),
              vehicles_where([](const Vehicle&) { return true; }), now);
        break;
      case StructureKind::segmented:
        segmented(now);
        break;
      case StructureKind::cooperative:
        cooperative_stage(now);
        break;
      case StructureKind::bilateral:
        segmented(now);
        bilateral_stage(now);
        break;
      case StructureKind::central:
        segmented(now);
        central_stage(now);
        break;
      case StructureKind::marketplace:
        marketplace_stage(now);
        segmented(now);
        break;
    }
  }

  void cooperative_stage(double now) {
    const auto& alliance = s_.structure.alliance;
    auto member = [&](PlatformId p) {
      return alliance.empty() || std::find(alliance.begin(), alliance.end(), p) != alliance.end();
    };
    match(waiting_where([&](const Request& r) { return member(r.owner); }),
          vehicles_where([&](const Vehicle& v) { return member(v.platform); }), now);
    for (const auto& p : s_.platforms) {
      if (member(p.id)) continue;
      match(waiting_where([&](const Request& r) { return r.owner == p.id; }),
            vehicles_where([&](const Vehicle& v) { return v.platform == p.id; }), now);
    }
  }

  std::vector<PlatformBook> books(const std::function<bool(const Request&)>& pool_pred) const {
    std::vector<PlatformBook> out;
    for (const auto& p : s_.platforms) {
      PlatformBook b;
      b.id = p.id;
      b.fleet = snapshot_vehicles(vehicles_where([&](const Vehicle& v) { return v.platform == p.id; }));
      b.pool = snapshot_requests(
          waiting_where([&](const Request& r) { return r.owner == p.id && pool_pred(r); }));
      out.push_back(std::move(b));
    }
    return out;
  }

  void settle(const TradeRecord& t) {
    ledger_[t.buyer].info_paid += t.info_price;
    ledger_[t.seller].info_received += t.info_price;
    traded_.insert(t.request);
    report_.trades.push_back(t);
  }

  void bilateral_stage(double now) {
    const auto book_list = books([](const Request&) { return true; });
    const auto outcome = bilateral_trading_round(context(now), book_list, traded_, trading_rng_);
    for (const auto& t : outcome.trades) {
      requests_[by_id_.at(t.request)].owner = t.buyer;
      settle(t);
    }
    for (const auto& [buyer, pool] : outcome.bought) {
      std::vector<std::size_t> req;
      for (const auto& r : pool) req.push_back(by_id_.at(r.id));
      match(req, vehicles_where([&](const Vehicle& v) { return v.platform == buyer; }), now);
    }
  }

  void central_stage(double now) {
    const auto req = waiting_where([](const Request&) { return true; });
    const auto veh = vehicles_where([&](const Vehicle& v) { return !matched_.count(v.id); });
    const auto rs = snapshot_requests(req);
    const auto vs = snapshot_vehicles(veh);
    const auto outcome = central_trading_epoch(context(now), rs, vs);
    for (const auto& t : outcome.trades) {
      requests_[by_id_.at(t.request)].owner = t.buyer;
      settle(t);
    }
    apply(outcome.graph, outcome.assignment, now);
  }

  void marketplace_stage(double now) {
    auto book_list = books([](const Request&) { return true; });
    const auto pool = snapshot_requests(waiting_where([](const Request& r) { return r.owner == kBroker; }));
    if (pool.empty()) return;
    const auto outcome = marketplace_epoch(context(now), pool, book_list, auction_rng_);
    for (const auto& [id, winner] : outcome.awards) requests_[by_id_.at(id)].owner = winner;
    for (const auto& rec : outcome.payments) {
      ledger_[rec.winner].auction_paid += rec.payment;
      broker_balance_ += rec.payment;
      report_.auctions.push_back(rec);
    }
  }

  void record_stop(const StopEvent& ev) {
    const std::size_t vi = vehicle_index_.at(ev.vehicle);
    report_.audit.route_leg_total += net_.distance(anchor_[vi], ev.node);
    anchor_[vi] = ev.node;
    Request& r = requests_[by_id_.at(ev.request)];
    if (ev.kind == StopKind::pickup) {
      r.state = RequestState::onboard;
      r.pickup_time = ev.time;
      report_.audit.max_wait_excess =
          std::max(report_.audit.max_wait_excess, ev.time - r.request_time - s_.limits.max_wait_s);
    } else {
      r.state = RequestState::served;
      r.dropoff_time = ev.time;
      const Money fare = fare_.at(r.id);
      Ledger& owner = ledger_[r.owner];
      owner.revenue += fare;
      ++owner.served;
      const PlatformId operator_platform = fleet_.vehicles[vi].platform;
      ledger_[operator_platform].contributing.insert(ev.vehicle);
      ledger_[r.platform].contributed_request_value += fare;
      report_.audit.fares_collected += fare;
      ++served_;
    }
    report_.events.push_back(ev);
  }

  void check_conservation() {
    std::size_t in_system = 0, served = 0, expired = 0;
    for (const auto& r : requests_) {
      if (!admitted(r)) continue;
      switch (r.state) {
        case RequestState::served: ++served; break;
        case RequestState::expired: ++expired; break;
        default: ++in_system; break;
      }
    }
    if (served + expired + in_system != admitted_ || served != served_ || expired != expired_) {
      report_.audit.request_conservation = false;
    }
  }

  void check_stop_order() {
    std::map<RequestId, std::vector<const StopEvent*>> per;
    for (const auto& ev : report_.events) per[ev.request].push_back(&ev);
    for (const auto& r : requests_) {
      auto it = per.find(r.id);
      if (r.state != RequestState::served) {
        if (it != per.end() && r.state != RequestState::onboard) report_.audit.stop_order = false;
        continue;
      }
      if (it == per.end() || it->second.size() != 2 || it->second[0]->kind != StopKind::pickup ||
          it->second[1]->kind != StopKind::dropoff || it->second[0]->vehicle != it->second[1]->vehicle ||
          it->second[0]->time > it->second[1]->time) {
        report_.audit.stop_order = false;
      }
    }
  }

  EpisodeReport finish() {
    EpisodeMetrics& m = report_.metrics;
    m.scenario = s_.name;
    m.structure = s_.structure.label();
    m.seed = s_.seed;
    Millimeters odometer = 0;
    for (const auto& v : fleet_.vehicles) {
      odometer += v.odometer;
      const Money pay = odometer_pay(s_.pricing, net_, v.odometer);
      ledger_[v.platform].driver_cost += pay;
      report_.audit.driver_pay_from_odometers += pay;
    }
    report_.audit.odometer_total = odometer;
    m.total_vmt = quantize4(static_cast<double>(odometer) / static_cast<double>(kMillimetersPerMile));
    m.requests = static_cast<std::int64_t>(admitted_);
    m.served = static_cast<std::int64_t>(served_);
    m.expired = static_cast<std::int64_t>(expired_);
    m.pct_unsatisfied =
        admitted_ == 0 ? 0.0 : quantize4(static_cast<double>(admitted_ - served_) / static_cast<double>(admitted_));
    double wait = 0.0;
    for (const auto& r : requests_) {
      if (r.state == RequestState::served) wait += *r.pickup_time - r.request_time;
    }
    m.avg_wait = served_ == 0 ? 0.0 : quantize4(wait / static_cast<double>(served_));
    m.trades = static_cast<std::int64_t>(report_.trades.size());
    m.broker_balance = broker_balance_;
    for (const auto& rec : report_.auctions) {
      m.auction_payments += rec.payment;
      report_.audit.auction_log_payments += rec.payment;
    }
    for (const auto& t : report_.trades) report_.audit.trade_payments += t.info_price;
    for (const auto& p : s_.platforms) {
      const Ledger& l = ledger_.at(p.id);
      PlatformMetrics pm;
      pm.id = p.id;
      pm.revenue = l.revenue;
      pm.driver_cost = l.driver_cost;
      pm.info_paid = l.info_paid;
      pm.info_received = l.info_received;
      pm.auction_paid = l.auction_paid;
      pm.profit = l.revenue - l.driver_cost - l.info_paid + l.info_received - l.auction_paid;
      pm.trips = l.trips;
      pm.served = l.served;
      pm.requests = l.requests;
      pm.contributing_vehicle_count = static_cast<std::int64_t>(l.contributing.size());
      pm.contributed_request_value = l.contributed_request_value;
      m.total_trips += l.trips;
      m.per_platform.push_back(pm);
    }
    check_stop_order();
    report_.requests = requests_;
    report_.vehicles = fleet_.vehicles;
    return std::move(report_);
  }

  const Scenario& s_;
  const RoadNetwork& net_;
  EpisodeReport report_;
  std::vector<Request> requests_;
  std::map<RequestId, std::size_t> by_id_;
  FleetState fleet_;
  std::map<VehicleId, std::size_t> vehicle_index_;
  std::vector<NodeIndex> anchor_;
  std::map<PlatformId, Ledger> ledger_;
  std::map<RequestId, Money> fare_;
  std::set<VehicleId> matched_;
  std::set<RequestId> traded_;
  Money broker_balance_;
  std::size_t admitted_ = 0, served_ = 0, expired_ = 0, epoch_ = 0;
  Rng auction_rng_{s_.seed, streams::kAuctionOrder};
  Rng trading_rng_{s_.seed, streams::kTradingOrder};
};

Scenario coalition_scenario(const Scenario& scenario, const std::vector<PlatformId>& coalition) {
  if (coalition.empty()) throw Error(Errc::empty_coalition, "coalition has no members");
  std::set<PlatformId> members(coalition.begin(), coalition.end());
  Scenario sub = scenario;
  sub.structure = MarketStructure{StructureKind::single, {}};
  sub.platforms.clear();
  for (const auto& p : scenario.platforms) {
    if (members.count(p.id)) sub.platforms.push_back(p);
  }
  if (sub.platforms.size() != members.size()) {
    throw Error(Errc::validation_error, "coalition names an unknown platform");
  }
  sub.requests.clear();
  for (const auto& r : scenario.requests) {
    if (members.count(r.platform)) sub.requests.push_back(r);
  }
  return sub;
}

Money total_profit(const EpisodeMetrics& m) {
  Money total;
  for (const auto& p : m.per_platform) total += p.profit;
  return total;
}

AllocationSummary summarize(std::string method, const std::function<CoreAllocation()>& solve) {
  AllocationSummary out;
  out.method = std::move(method);
  try {
    const CoreAllocation a = solve();
    if (a.core_empty()) {
      out.result = "core_empty";
    } else {
      out.result = "ok";
      for (double x : a.allocation->x) out.x.push_back(quantize4(x));
      out.spread = quantize4(a.allocation->spread);
    }
  } catch (const Error& e) {
    out.result = std::string(to_string(e.code()));
  }
  return out;
}

CooperativeSummary cooperate(const Scenario& scenario, const EpisodeMetrics& main) {
  CooperativeSummary out;
  out.players = scenario.structure.alliance;
  if (out.players.empty()) {
    for (const auto& p : scenario.platforms) out.players.push_back(p.id);
  }
  std::sort(out.players.begin(), out.players.end());
  const auto game = CoalitionGame::from_function(out.players, [&](CoalitionMask mask) {
    std::vector<PlatformId> members;
    for (std::size_t i = 0; i < out.players.size(); ++i) {
      if ((mask >> i) & 1U) members.push_back(out.players[i]);
    }
    return characteristic_value(scenario, members).dollars();
  });
  for (CoalitionMask mask = 1; mask <= game.grand(); ++mask) {
    out.coalition_values.emplace_back(game.key(mask), game.value(mask));
  }

  out.allocations.push_back(summarize("shapley", [&] { return CoreAllocation{shapley(game)}; }));
  out.allocations.push_back(summarize("epm", [&] { return epm_allocate(game); }));
  out.allocations.push_back(summarize("contribution", [&]() -> CoreAllocation {
    std::vector<double> costs, revenues;
    for (PlatformId id : out.players) {
      for (const auto& p : main.per_platform) {
        if (p.id == id) {
          costs.push_back(p.driver_cost.dollars());
          revenues.push_back(p.revenue.dollars());
        }
      }
    }
    const auto w = contribution_weights(costs, revenues, game.value(game.grand()));
    for (double x : w.w) out.weights.push_back(quantize4(x));
    out.theta_profit_is_one = std::abs(w.theta_profit - 1.0) < 1e-12;
    return contribution_allocate(game, w.w);
  }));
  return out;
}

}  // namespace

void Scenario::validate() const {
  if (!network) throw Error(Errc::validation_error, "scenario has no network");
  pricing.validate();
  if (!(limits.interval_s > 0.0)) throw Error(Errc::validation_error, "interval_s must be positive");
  if (!(limits.detour_factor >= 1.0)) throw Error(Errc::validation_error, "detour_factor must be >= 1");
  if (!(limits.max_wait_s >= 0.0) || !(limits.max_pickup_s >= 0.0)) {
    throw Error(Errc::validation_error, "wait limits must be non-negative");
  }
  if (!(limits.penalty >= 0.0)) throw Error(Errc::validation_error, "penalty must be non-negative");
  if (!(limits.gamma >= 0.0 && limits.gamma <= 1.0)) {
    throw Error(Errc::validation_error, "gamma must lie in [0, 1]");
  }
  std::set<PlatformId> ids;
  for (const auto& p : platforms) {
    if (p.id == kBroker || !ids.insert(p.id).second) {
      throw Error(Errc::validation_error, "duplicate or reserved platform id " + std::to_string(p.id));
    }
    if (p.vehicles < 0 || p.vehicles >= kVehicleIdStride) {
      throw Error(Errc::validation_error, "platform " + std::to_string(p.id) + " vehicle count");
    }
    if (!p.placements.empty() && static_cast<int>(p.placements.size()) != p.vehicles) {
      throw Error(Errc::validation_error, "platform " + std::to_string(p.id) + " placements");
    }
    for (NodeIndex n : p.placements) {
      if (n >= network->node_count()) throw Error(Errc::validation_error, "placement node out of range");
    }
  }
  if (platforms.empty()) throw Error(Errc::validation_error, "scenario has no platforms");
  for (PlatformId a : structure.alliance) {
    if (!ids.count(a)) throw Error(Errc::validation_error, "alliance names unknown platform");
  }
  std::set<RequestId> seen;
  for (const auto& r : requests) {
    if (!seen.insert(r.id).second) throw Error(Errc::validation_error, "duplicate request id");
    if (!ids.count(r.platform)) {
      throw Error(Errc::validation_error, "request " + std::to_string(r.id) + " names unknown platform");
    }
    if (r.origin >= network->node_count() || r.destination >= network->node_count()) {
      throw Error(Errc::validation_error, "request " + std::to_string(r.id) + " node out of range");
    }
    if (r.request_time > horizon_s) {
      throw Error(Errc::validation_error, "request " + std::to_string(r.id) + " after horizon");
    }
  }
}

std::vector<Vehicle> initial_fleet(const Scenario& scenario) {
  std::vector<Vehicle> out;
  for (const auto& p : scenario.platforms) {
    Rng rng(scenario.seed, std::string(streams::kPlacement) + ":" + std::to_string(p.id));
    for (int k = 0; k < p.vehicles; ++k) {
      Vehicle v;
      v.id = static_cast<VehicleId>(p.id) * kVehicleIdStride + k;
      v.platform = p.id;
      v.position = p.placements.empty()
                       ? static_cast<NodeIndex>(rng.below(scenario.network->node_count()))
                       : p.placements[static_cast<std::size_t>(k)];
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<StopEvent> advance_vehicles(FleetState& state, const RoadNetwork& net, double dt) {
  if (!(dt > 0.0)) throw Error(Errc::validation_error, "dt must be positive");
  const double end = state.now + dt;
  std::vector<StopEvent> events;
  for (auto& v : state.vehicles) {
    double t = std::max(v.ready_time, state.now);
    while (!v.schedule.empty()) {
      const Stop stop = v.schedule.front();
      if (v.position == stop.node) {
        if (t > end + kTimeSlack) break;
        events.push_back({t, v.id, stop.request, stop.kind, stop.node});
        auto rider = std::find_if(v.riders.begin(), v.riders.end(),
                                  [&](const Commitment& c) { return c.request == stop.request; });
        if (stop.kind == StopKind::pickup) {
          if (rider != v.riders.end()) {
            rider->onboard = true;
            rider->pickup_time = t;
          }
        } else if (rider != v.riders.end()) {
          v.riders.erase(rider);
        }
        v.schedule.erase(v.schedule.begin());
        continue;
      }
      if (t >= end - kTimeSlack) break;
      const NodeIndex next = net.next_hop(v.position, stop.node);
      const Millimeters len = net.distance(v.position, next);
      t += net.travel_time(len);
      v.odometer += len;
      v.position = next;
    }
    v.ready_time = t;
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const StopEvent& a, const StopEvent& b) { return a.time < b.time; });
  state.now = end;
  return events;
}

std::vector<RequestId> expire_requests(std::vector<Request>& requests, double now, double max_wait_s) {
  std::vector<RequestId> out;
  for (auto& r : requests) {
    if (r.state == RequestState::waiting && r.request_time <= now && now - r.request_time > max_wait_s) {
      r.state = RequestState::expired;
      out.push_back(r.id);
    }
  }
  return out;
}

EpisodeReport run(const Scenario& scenario) {
  scenario.validate();
  EpisodeReport report = Episode(scenario).run();
  if (scenario.structure.kind == StructureKind::cooperative) {
    report.metrics.cooperative = cooperate(scenario, report.metrics);
  }
  return report;
}

Money characteristic_value(const Scenario& scenario, const std::vector<PlatformId>& coalition) {
  const Scenario sub = coalition_scenario(scenario, coalition);
  return total_profit(run(sub).metrics);
}

}  // namespace marketsim
