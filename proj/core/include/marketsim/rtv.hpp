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

#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "marketsim/model.hpp"
#include "marketsim/network.hpp"

namespace marketsim {

struct RoutePlan {
  std::vector<Stop> stops;
  std::vector<double> arrival;  // time the vehicle reaches each stop
  Millimeters distance = 0;
};

/// Minimum-distance stop order serving every rider in `riders` from `start`
/// at `start_time`, subject to each rider's pickup deadline, ride-time limit
/// and the vehicle capacity. Exhaustive depth-first search with pruning;
/// riders are explored in the order given, so ties resolve to the first
/// order found. nullopt when no order is feasible.
std::optional<RoutePlan> plan_route(const RoadNetwork& net, NodeIndex start, double start_time,
                                    std::span<const Commitment> riders, int capacity);

/// Time and distance of driving the vehicle's current schedule as planned.
struct ScheduleEvaluation {
  Millimeters distance = 0;
  std::int64_t delay_ms = 0;  // summed over committed riders
};
ScheduleEvaluation evaluate_schedule(const RoadNetwork& net, const Vehicle& vehicle, double now);

/// Commitment describing a not-yet-assigned request as if assigned at `now`.
Commitment commitment_for(const Request& request, double now, const Constraints& limits);

struct RvGraph {
  std::vector<std::pair<RequestId, RequestId>> rr_edges;  // first < second, sorted
  std::vector<std::pair<RequestId, VehicleId>> rv_edges;  // sorted

  [[nodiscard]] bool shareable(RequestId a, RequestId b) const;
  [[nodiscard]] bool reachable(RequestId r, VehicleId v) const;
};

RvGraph build_rv_graph(std::span<const Request> requests, std::span<const Vehicle> vehicles,
                       const RoadNetwork& net, double now, const Constraints& limits);

struct TripVehicleEdge {
  std::size_t trip = 0;     // index into RtvGraph::trips
  std::size_t vehicle = 0;  // index into RtvGraph::vehicles
  Trip plan;
};

struct VehicleRef {
  VehicleId id = 0;
  PlatformId platform = 0;
};

// Request-trip-vehicle graph. Requests and vehicles are kept as snapshots so
// that downstream solvers need nothing else. `edges` are ordered by
// (vehicle, trip) and their positions serve as stable edge ids.
struct RtvGraph {
  std::vector<Request> requests;            // sorted by id
  std::vector<VehicleRef> vehicles;         // sorted by id
  std::vector<std::vector<RequestId>> trips;  // sorted request-id sets
  std::vector<TripVehicleEdge> edges;
  double speed_mps = 1.0;

  [[nodiscard]] const Request& request(RequestId id) const;
  [[nodiscard]] std::size_t request_index(RequestId id) const;
};

/// All trips of up to `capacity` requests whose request pairs are all
/// rr-adjacent, whose every smaller sub-trip is feasible, and that at least
/// one vehicle can serve. Each (trip, vehicle) edge keeps the shortest
/// feasible route.
RtvGraph enumerate_trips(const RvGraph& rv, std::span<const Request> requests,
                         std::span<const Vehicle> vehicles, const RoadNetwork& net, double now,
                         const Constraints& limits, int capacity = kVehicleCapacity);

/// build_rv_graph followed by enumerate_trips.
RtvGraph build_rtv_graph(std::span<const Request> requests, std::span<const Vehicle> vehicles,
                         const RoadNetwork& net, double now, const Constraints& limits);

enum class StructureKind { single, segmented, bilateral, central, cooperative, marketplace };

std::string_view to_string(StructureKind kind);
/// Throws Errc::validation_error for unknown names.
StructureKind parse_structure_kind(std::string_view name);

struct MarketStructure {
  StructureKind kind = StructureKind::segmented;
  std::vector<PlatformId> alliance;  // cooperative only; empty means every platform

  /// Short label such as "segmented" or "cooperative:0+1".
  [[nodiscard]] std::string label() const;
  /// Parses the labels produced by label().
  static MarketStructure parse(std::string_view label);
};

struct PlatformMap {
  std::unordered_map<RequestId, PlatformId> requests;
  std::unordered_map<VehicleId, PlatformId> vehicles;
};

/// Subgraph of `graph` admissible under `structure`. Single keeps everything;
/// segmented keeps single-platform trips on same-platform vehicles;
/// cooperative additionally admits any mix of alliance members. Trading and
/// marketplace kinds return the segmented graph. Throws Errc::unmapped_entity
/// when a request or vehicle is missing from `platform_of`.
RtvGraph apply_market_structure(const RtvGraph& graph, const MarketStructure& structure,
                                const PlatformMap& platform_of);

}  // namespace marketsim
