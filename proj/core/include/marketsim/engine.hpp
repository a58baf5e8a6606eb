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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "marketsim/assignment.hpp"
#include "marketsim/cooperative.hpp"
#include "marketsim/market.hpp"
#include "marketsim/model.hpp"
#include "marketsim/network.hpp"
#include "marketsim/rtv.hpp"

namespace marketsim {

struct PlatformSpec {
  PlatformId id = 0;
  int vehicles = 0;
  /// Explicit start nodes; when empty they are drawn uniformly at random
  /// from the "placement:<id>" substream.
  std::vector<NodeIndex> placements;
};

struct Scenario {
  std::string name = "scenario";
  std::shared_ptr<const RoadNetwork> network;
  std::vector<Request> requests;
  std::vector<PlatformSpec> platforms;
  PricingScheme pricing;
  MarketStructure structure;
  Constraints limits;
  std::uint64_t seed = 1;
  double horizon_s = 0.0;
  Objective objective = Objective::min_vmt_penalty;

  /// Throws Errc::validation_error on inconsistent input.
  void validate() const;
};

/// Vehicle ids are platform * kVehicleIdStride + k so that a platform's fleet
/// is identical whichever other platforms are present.
inline constexpr VehicleId kVehicleIdStride = 100000;

std::vector<Vehicle> initial_fleet(const Scenario& scenario);

struct PlatformMetrics {
  PlatformId id = 0;
  Money profit;
  Money revenue;
  Money driver_cost;
  Money info_paid;
  Money info_received;
  Money auction_paid;
  std::int64_t trips = 0;
  std::int64_t served = 0;
  std::int64_t requests = 0;
  std::int64_t contributing_vehicle_count = 0;
  Money contributed_request_value;

  friend bool operator==(const PlatformMetrics&, const PlatformMetrics&) = default;
};

struct AllocationSummary {
  std::string method;  // shapley | epm | contribution
  std::string result;  // ok | core_empty | <error code>
  std::vector<double> x;  // aligned with CooperativeSummary::players
  double spread = 0.0;

  friend bool operator==(const AllocationSummary&, const AllocationSummary&) = default;
};

struct CooperativeSummary {
  std::vector<PlatformId> players;
  std::vector<std::pair<std::string, double>> coalition_values;  // key -> v(S)
  std::vector<double> weights;
  bool theta_profit_is_one = false;
  std::vector<AllocationSummary> allocations;

  friend bool operator==(const CooperativeSummary&, const CooperativeSummary&) = default;
};

// Headline numbers of one episode. Floating fields are quantised to four
// decimals when computed so that they survive a text round trip unchanged.
struct EpisodeMetrics {
  std::string scenario;
  std::string structure;
  std::uint64_t seed = 0;
  double total_vmt = 0.0;        // miles
  double pct_unsatisfied = 0.0;  // fraction in [0, 1]
  double avg_wait = 0.0;         // seconds over served requests
  std::int64_t total_trips = 0;
  std::int64_t requests = 0;
  std::int64_t served = 0;
  std::int64_t expired = 0;
  std::int64_t trades = 0;
  Money auction_payments;
  Money broker_balance;
  std::vector<PlatformMetrics> per_platform;
  std::optional<CooperativeSummary> cooperative;

  friend bool operator==(const EpisodeMetrics&, const EpisodeMetrics&) = default;
};

/// Independent tallies kept alongside the metrics for conservation checks.
struct EpisodeAudit {
  Millimeters odometer_total = 0;       // sum of per-edge vehicle movement
  Millimeters route_leg_total = 0;      // sum of shortest distances between route anchors
  Money fares_collected;                // from served request records
  Money driver_pay_from_odometers;
  Money trade_payments;                 // sum over the trade log
  Money auction_log_payments;           // sum over the auction log
  bool request_conservation = true;     // served + expired + in system == admitted, every epoch
  bool stop_order = true;               // one pickup then one dropoff per served request
  double max_wait_excess = 0.0;         // max(pickup - request - max_wait), seconds
  std::size_t epochs = 0;
};

struct StopEvent {
  double time = 0.0;
  VehicleId vehicle = 0;
  RequestId request = 0;
  StopKind kind = StopKind::pickup;
  NodeIndex node = 0;
};

struct EpisodeReport {
  EpisodeMetrics metrics;
  EpisodeAudit audit;
  std::vector<TradeRecord> trades;
  std::vector<AuctionRecord> auctions;
  std::vector<StopEvent> events;
  std::vector<Request> requests;  // final states
  std::vector<Vehicle> vehicles;  // final states
};

/// Runs the episode. Cooperative structures also re-simulate every coalition
/// of the alliance and attach the three profit allocations.
EpisodeReport run(const Scenario& scenario);

/// Profit (fares - driver pay) of the coalition's requests and vehicles
/// operated as one platform. Throws Errc::empty_coalition.
Money characteristic_value(const Scenario& scenario, const std::vector<PlatformId>& coalition);

struct FleetState {
  double now = 0.0;
  std::vector<Vehicle> vehicles;
};

/// Moves every vehicle along its schedule for `dt` seconds at the network
/// speed, executing stops on the way. A vehicle that starts an edge finishes
/// it; the overshoot is carried in Vehicle::ready_time. Returns the stop
/// events in time order.
std::vector<StopEvent> advance_vehicles(FleetState& state, const RoadNetwork& net, double dt);

/// Marks waiting requests older than `max_wait_s` at `now` as expired.
std::vector<RequestId> expire_requests(std::vector<Request>& requests, double now, double max_wait_s);

}  // namespace marketsim
