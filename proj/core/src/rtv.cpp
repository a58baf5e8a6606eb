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

#include "marketsim/rtv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "marketsim/error.hpp"

namespace marketsim {
namespace {

constexpr double kTimeSlack = 1e-6;

class RouteSearch {
 public:
  RouteSearch(const RoadNetwork& net, double start_time, std::span<const Commitment> riders,
              int capacity)
      : net_(net), start_time_(start_time), riders_(riders), capacity_(capacity),
        picked_(riders.size()), dropped_(riders.size()), pickup_time_(riders.size()) {}

  std::optional<RoutePlan> run(NodeIndex start) {
    int load = 0;
    for (std::size_t i = 0; i < riders_.size(); ++i) {
      if (riders_[i].onboard) {
        picked_[i] = true;
        pickup_time_[i] = riders_[i].pickup_time;
        ++load;
      }
    }
    if (load > capacity_) return std::nullopt;
    stops_.reserve(riders_.size() * 2);
    arrivals_.reserve(riders_.size() * 2);
    descend(start, 0, load, 0);
    return best_;
  }

 private:
  double time_at(Millimeters travelled) const { return start_time_ + net_.travel_time(travelled); }

  // True when every pending stop can still be reached in time from `node`.
  bool still_feasible(NodeIndex node, Millimeters travelled) const {
    for (std::size_t i = 0; i < riders_.size(); ++i) {
      if (dropped_[i]) continue;
      const auto& r = riders_[i];
      if (!picked_[i]) {
        const Millimeters leg = net_.distance(node, r.origin);
        if (leg == kUnreachable || time_at(travelled + leg) > r.pickup_deadline + kTimeSlack) {
          return false;
        }
      } else {
        const Millimeters leg = net_.distance(node, r.destination);
        if (leg == kUnreachable ||
            time_at(travelled + leg) - pickup_time_[i] > r.max_ride_s + kTimeSlack) {
          return false;
        }
      }
    }
    return true;
  }

  void descend(NodeIndex node, Millimeters travelled, int load, std::size_t done) {
    if (done == riders_.size()) {
      if (!best_ || travelled < best_->distance) {
        best_ = RoutePlan{stops_, arrivals_, travelled};
      }
      return;
    }
    if (!still_feasible(node, travelled)) return;
    for (std::size_t i = 0; i < riders_.size(); ++i) {
      if (dropped_[i]) continue;
      const auto& r = riders_[i];
      const bool pickup = !picked_[i];
      if (pickup && load >= capacity_) continue;
      const NodeIndex target = pickup ? r.origin : r.destination;
      const Millimeters leg = net_.distance(node, target);
      if (leg == kUnreachable) continue;
      const Millimeters next = travelled + leg;
      if (best_ && next >= best_->distance) continue;
      const double arrive = time_at(next);
      stops_.push_back({target, r.request, pickup ? StopKind::pickup : StopKind::dropoff});
      arrivals_.push_back(arrive);
      if (pickup) {
        if (arrive <= r.pickup_deadline + kTimeSlack) {
          picked_[i] = true;
          pickup_time_[i] = arrive;
          descend(target, next, load + 1, done);
          picked_[i] = false;
        }
      } else if (arrive - pickup_time_[i] <= r.max_ride_s + kTimeSlack) {
        dropped_[i] = true;
        descend(target, next, load - 1, done + 1);
        dropped_[i] = false;
      }
      stops_.pop_back();
      arrivals_.pop_back();
    }
  }

  const RoadNetwork& net_;
  double start_time_;
  std::span<const Commitment> riders_;
  int capacity_;
  std::vector<bool> picked_;
  std::vector<bool> dropped_;
  std::vector<double> pickup_time_;
  std::vector<Stop> stops_;
  std::vector<double> arrivals_;
  std::optional<RoutePlan> best_;
};

double start_time_of(const Vehicle& v, double now) { return std::max(now, v.ready_time); }

std::int64_t delay_ms(double dropoff, const Commitment& c) {
  return static_cast<std::int64_t>(std::llround((dropoff - c.request_time - c.direct_duration) * 1000.0));
}

template <class Key, class Value>
bool sorted_contains(const std::vector<std::pair<Key, Value>>& sorted, const std::pair<Key, Value>& item) {
  return std::binary_search(sorted.begin(), sorted.end(), item);
}

struct SizeFirst {
  bool operator()(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

}  // namespace

std::optional<RoutePlan> plan_route(const RoadNetwork& net, NodeIndex start, double start_time,
                                    std::span<const Commitment> riders, int capacity) {
  return RouteSearch(net, start_time, riders, capacity).run(start);
}

ScheduleEvaluation evaluate_schedule(const RoadNetwork& net, const Vehicle& vehicle, double now) {
  ScheduleEvaluation out;
  const double start = start_time_of(vehicle, now);
  NodeIndex at = vehicle.position;
  for (const auto& stop : vehicle.schedule) {
    out.distance += net.distance(at, stop.node);
    at = stop.node;
    if (stop.kind == StopKind::dropoff) {
      auto it = std::find_if(vehicle.riders.begin(), vehicle.riders.end(),
                             [&](const Commitment& c) { return c.request == stop.request; });
      if (it != vehicle.riders.end()) {
        out.delay_ms += delay_ms(start + net.travel_time(out.distance), *it);
      }
    }
  }
  return out;
}

Commitment commitment_for(const Request& request, double now, const Constraints& limits) {
  Commitment c;
  c.request = request.id;
  c.origin = request.origin;
  c.destination = request.destination;
  c.request_time = request.request_time;
  c.direct_duration = request.direct_duration;
  c.pickup_deadline = std::min(request.request_time + limits.max_wait_s, now + limits.max_pickup_s);
  c.max_ride_s = limits.detour_factor * request.direct_duration;
  return c;
}

bool RvGraph::shareable(RequestId a, RequestId b) const {
  if (a > b) std::swap(a, b);
  return sorted_contains(rr_edges, {a, b});
}

bool RvGraph::reachable(RequestId r, VehicleId v) const { return sorted_contains(rv_edges, {r, v}); }

RvGraph build_rv_graph(std::span<const Request> requests, std::span<const Vehicle> vehicles,
                       const RoadNetwork& net, double now, const Constraints& limits) {
  RvGraph g;
  for (const auto& r : requests) {
    const Commitment mine = commitment_for(r, now, limits);
    for (const auto& v : vehicles) {
      if (static_cast<int>(v.riders.size()) + 1 > v.capacity) continue;
      const double start = start_time_of(v, now);
      const Millimeters approach = net.distance(v.position, r.origin);
      if (approach == kUnreachable || start + net.travel_time(approach) > mine.pickup_deadline + kTimeSlack) {
        continue;
      }
      std::vector<Commitment> riders = v.riders;
      riders.push_back(mine);
      if (plan_route(net, v.position, start, riders, v.capacity)) g.rv_edges.emplace_back(r.id, v.id);
    }
  }
  // Probe vehicle standing at one request's origin at its request time. Only
  // absolute deadlines apply, which makes the test a relaxation of any real
  // vehicle's feasibility.
  for (std::size_t i = 0; i < requests.size(); ++i) {
    for (std::size_t j = i + 1; j < requests.size(); ++j) {
      const Request* pair[2] = {&requests[i], &requests[j]};
      bool ok = false;
      for (int first = 0; first < 2 && !ok; ++first) {
        const Request& at = *pair[first];
        std::vector<Commitment> riders;
        for (const Request* r : pair) {
          Commitment c = commitment_for(*r, at.request_time, limits);
          c.pickup_deadline = r->request_time + limits.max_wait_s;
          riders.push_back(c);
        }
        ok = plan_route(net, at.origin, at.request_time, riders, kVehicleCapacity).has_value();
      }
      if (ok) {
        g.rr_edges.emplace_back(std::min(requests[i].id, requests[j].id),
                                std::max(requests[i].id, requests[j].id));
      }
    }
  }
  std::sort(g.rr_edges.begin(), g.rr_edges.end());
  std::sort(g.rv_edges.begin(), g.rv_edges.end());
  return g;
}

const Request& RtvGraph::request(RequestId id) const { return requests[request_index(id)]; }

std::size_t RtvGraph::request_index(RequestId id) const {
  auto it = std::lower_bound(requests.begin(), requests.end(), id,
                             [](const Request& r, RequestId key) { return r.id < key; });
  if (it == requests.end() || it->id != id) {
    throw Error(Errc::validation_error, "request " + std::to_string(id) + " not in graph");
  }
  return static_cast<std::size_t>(it - requests.begin());
}

RtvGraph enumerate_trips(const RvGraph& rv, std::span<const Request> requests,
                         std::span<const Vehicle> vehicles, const RoadNetwork& net, double now,
                         const Constraints& limits, int capacity) {
  RtvGraph g;
  g.speed_mps = net.speed();
  g.requests.assign(requests.begin(), requests.end());
  std::sort(g.requests.begin(), g.requests.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });
  std::vector<const Vehicle*> fleet;
  for (const auto& v : vehicles) fleet.push_back(&v);
  std::sort(fleet.begin(), fleet.end(), [](const Vehicle* a, const Vehicle* b) { return a->id < b->id; });
  for (const Vehicle* v : fleet) g.vehicles.push_back({v->id, v->platform});

  std::vector<Commitment> fresh;
  fresh.reserve(g.requests.size());
  for (const auto& r : g.requests) fresh.push_back(commitment_for(r, now, limits));

  std::vector<ScheduleEvaluation> baseline;
  for (const Vehicle* v : fleet) baseline.push_back(evaluate_schedule(net, *v, now));

  struct Candidate {
    std::size_t vehicle;
    Trip plan;
  };
  // Trips keyed by sorted request index sets; value = feasible vehicle indices.
  using Key = std::vector<std::size_t>;
  std::map<Key, std::vector<Candidate>> level;
  std::map<Key, std::vector<Candidate>, SizeFirst> all;

  auto try_plan = [&](const Key& members, std::size_t vi) -> std::optional<Trip> {
    const Vehicle& v = *fleet[vi];
    if (static_cast<int>(v.riders.size() + members.size()) > std::min(capacity, v.capacity)) {
      return std::nullopt;
    }
    std::vector<Commitment> riders = v.riders;
    for (std::size_t m : members) riders.push_back(fresh[m]);
    const double start = start_time_of(v, now);
    auto plan = plan_route(net, v.position, start, riders, v.capacity);
    if (!plan) return std::nullopt;
    Trip trip;
    for (std::size_t m : members) trip.requests.push_back(g.requests[m].id);
    trip.vehicle = v.id;
    trip.route = plan->stops;
    trip.total_distance = plan->distance;
    trip.added_distance = plan->distance - baseline[vi].distance;
    trip.riders_on_route = static_cast<int>(riders.size());
    std::int64_t delay_total = 0;
    for (std::size_t s = 0; s < plan->stops.size(); ++s) {
      const Stop& stop = plan->stops[s];
      if (stop.kind != StopKind::dropoff) continue;
      auto it = std::find_if(riders.begin(), riders.end(),
                             [&](const Commitment& c) { return c.request == stop.request; });
      delay_total += delay_ms(plan->arrival[s], *it);
      if (std::find(trip.requests.begin(), trip.requests.end(), stop.request) != trip.requests.end()) {
        trip.per_request_delay.emplace_back(
            stop.request, plan->arrival[s] - it->request_time - it->direct_duration);
      }
    }
    std::sort(trip.per_request_delay.begin(), trip.per_request_delay.end());
    trip.added_delay_ms = delay_total - baseline[vi].delay_ms;
    return trip;
  };

  std::map<VehicleId, std::size_t> vehicle_index;
  for (std::size_t vi = 0; vi < fleet.size(); ++vi) vehicle_index[fleet[vi]->id] = vi;

  for (std::size_t ri = 0; ri < g.requests.size(); ++ri) {
    std::vector<Candidate> feasible;
    for (std::size_t vi = 0; vi < fleet.size(); ++vi) {
      if (!rv.reachable(g.requests[ri].id, fleet[vi]->id)) continue;
      if (auto trip = try_plan({ri}, vi)) feasible.push_back({vi, std::move(*trip)});
    }
    if (!feasible.empty()) level.emplace(Key{ri}, std::move(feasible));
  }

  for (int size = 1; !level.empty(); ++size) {
    std::map<Key, std::vector<Candidate>> next;
    if (size < capacity) {
      for (const auto& [members, cands] : level) {
        for (std::size_t add = members.back() + 1; add < g.requests.size(); ++add) {
          bool adjacent = true;
          for (std::size_t m : members) {
            if (!rv.shareable(g.requests[m].id, g.requests[add].id)) { adjacent = false; break; }
          }
          if (!adjacent) continue;
          Key grown = members;
          grown.push_back(add);
          // Every sub-trip must be feasible; a vehicle qualifies only if it
          // serves all of them.
          std::vector<std::size_t> common;
          for (const auto& c : cands) common.push_back(c.vehicle);
          bool closed = true;
          for (std::size_t drop = 0; drop < grown.size() && closed; ++drop) {
            Key sub;
            for (std::size_t k = 0; k < grown.size(); ++k) if (k != drop) sub.push_back(grown[k]);
            auto it = level.find(sub);
            if (it == level.end()) { closed = false; break; }
            std::vector<std::size_t> keep;
            for (std::size_t vi : common) {
              if (std::any_of(it->second.begin(), it->second.end(),
                              [vi](const Candidate& c) { return c.vehicle == vi; })) {
                keep.push_back(vi);
              }
            }
            common = std::move(keep);
            if (common.empty()) closed = false;
          }
          if (!closed) continue;
          std::vector<Candidate> feasible;
          for (std::size_t vi : common) {
            if (auto trip = try_plan(grown, vi)) feasible.push_back({vi, std::move(*trip)});
          }
          if (!feasible.empty()) next.emplace(std::move(grown), std::move(feasible));
        }
      }
    }
    for (auto& [members, cands] : level) all.emplace(members, std::move(cands));
    level = std::move(next);
  }

  // Trips come out ordered by size, then lexicographically by request id
  // (indices follow id order).
  for (auto& [members, cands] : all) {
    std::vector<RequestId> ids;
    for (std::size_t m : members) ids.push_back(g.requests[m].id);
    const std::size_t trip_index = g.trips.size();
    g.trips.push_back(std::move(ids));
    for (auto& c : cands) g.edges.push_back({trip_index, c.vehicle, std::move(c.plan)});
  }
  std::stable_sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return a.vehicle != b.vehicle ? a.vehicle < b.vehicle : a.trip < b.trip;
  });
  return g;
}

RtvGraph build_rtv_graph(std::span<const Request> requests, std::span<const Vehicle> vehicles,
                         const RoadNetwork& net, double now, const Constraints& limits) {
  const RvGraph rv = build_rv_graph(requests, vehicles, net, now, limits);
  return enumerate_trips(rv, requests, vehicles, net, now, limits);
}

std::string_view to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::single: return "single";
    case StructureKind::segmented: return "segmented";
    case StructureKind::bilateral: return "bilateral";
    case StructureKind::central: return "central";
    case StructureKind::cooperative: return "cooperative";
    case StructureKind::marketplace: return "marketplace";
  }
  return "unknown";
}

StructureKind parse_structure_kind(std::string_view name) {
  for (auto kind : {StructureKind::single, StructureKind::segmented, StructureKind::bilateral,
                    StructureKind::central, StructureKind::cooperative, StructureKind::marketplace}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(Errc::validation_error, "unknown market structure '" + std::string(name) + "'");
}

std::string MarketStructure::label() const {
  std::string out(to_string(kind));
  if (kind == StructureKind::cooperative && !alliance.empty()) {
    out += ':';
    for (std::size_t i = 0; i < alliance.size(); ++i) {
      if (i) out += '+';
      out += std::to_string(alliance[i]);
    }
  }
  return out;
}

MarketStructure MarketStructure::parse(std::string_view label) {
  MarketStructure s;
  const auto colon = label.find(':');
  s.kind = parse_structure_kind(label.substr(0, colon));
  if (colon != std::string_view::npos) {
    if (s.kind != StructureKind::cooperative) {
      throw Error(Errc::validation_error, "only cooperative structures take an alliance");
    }
    std::string_view rest = label.substr(colon + 1);
    while (!rest.empty()) {
      const auto plus = rest.find('+');
      std::string_view token = rest.substr(0, plus);
      PlatformId id = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(Errc::validation_error, "bad alliance member '" + std::string(token) + "'");
      }
      s.alliance.push_back(id);
      if (plus == std::string_view::npos) break;
      rest.remove_prefix(plus + 1);
    }
    std::sort(s.alliance.begin(), s.alliance.end());
    s.alliance.erase(std::unique(s.alliance.begin(), s.alliance.end()), s.alliance.end());
  }
  return s;
}

RtvGraph apply_market_structure(const RtvGraph& graph, const MarketStructure& structure,
                                const PlatformMap& platform_of) {
  auto request_platform = [&](RequestId id) {
    auto it = platform_of.requests.find(id);
    if (it == platform_of.requests.end()) {
      throw Error(Errc::unmapped_entity, "request " + std::to_string(id));
    }
    return it->second;
  };
  auto vehicle_platform = [&](VehicleId id) {
    auto it = platform_of.vehicles.find(id);
    if (it == platform_of.vehicles.end()) {
      throw Error(Errc::unmapped_entity, "vehicle " + std::to_string(id));
    }
    return it->second;
  };
  for (const auto& r : graph.requests) request_platform(r.id);
  for (const auto& v : graph.vehicles) vehicle_platform(v.id);

  if (structure.kind == StructureKind::single) return graph;

  std::set<PlatformId> alliance(structure.alliance.begin(), structure.alliance.end());
  const bool whole_market = structure.kind == StructureKind::cooperative && alliance.empty();

  std::vector<std::set<PlatformId>> trip_platforms;
  for (const auto& trip : graph.trips) {
    std::set<PlatformId> ps;
    for (RequestId id : trip) ps.insert(request_platform(id));
    trip_platforms.push_back(std::move(ps));
  }
  auto admissible = [&](const TripVehicleEdge& e) {
    const auto& ps = trip_platforms[e.trip];
    const PlatformId pv = vehicle_platform(graph.vehicles[e.vehicle].id);
    if (ps.size() == 1 && *ps.begin() == pv) return true;
    if (structure.kind != StructureKind::cooperative) return false;
    if (whole_market) return true;
    if (!alliance.count(pv)) return false;
    return std::all_of(ps.begin(), ps.end(), [&](PlatformId p) { return alliance.count(p) > 0; });
  };

  RtvGraph out;
  out.requests = graph.requests;
  out.vehicles = graph.vehicles;
  out.speed_mps = graph.speed_mps;
  std::vector<bool> keep_trip(graph.trips.size(), false);
  for (const auto& e : graph.edges) {
    if (admissible(e)) keep_trip[e.trip] = true;
  }
  std::vector<std::size_t> remap(graph.trips.size(), 0);
  for (std::size_t t = 0; t < graph.trips.size(); ++t) {
    if (!keep_trip[t]) continue;
    remap[t] = out.trips.size();
    out.trips.push_back(graph.trips[t]);
  }
  for (const auto& e : graph.edges) {
    if (!admissible(e)) continue;
    TripVehicleEdge copy = e;
    copy.trip = remap[e.trip];
    out.edges.push_back(std::move(copy));
  }
  return out;
}

}  // namespace marketsim
