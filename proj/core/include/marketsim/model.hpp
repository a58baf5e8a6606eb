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
#include <optional>
#include <utility>
#include <vector>

#include "marketsim/money.hpp"
#include "marketsim/network.hpp"

namespace marketsim {

using RequestId = std::int64_t;
using VehicleId = std::int64_t;
using PlatformId = std::uint32_t;

inline constexpr int kVehicleCapacity = 4;

/// Operating limits of the matching layer. Defaults are the simulator values
/// used throughout the experiments.
struct Constraints {
  double detour_factor = 1.25;  // max in-vehicle time / direct time
  double max_wait_s = 300.0;    // request to pickup
  double max_pickup_s = 300.0;  // assignment to pickup
  double penalty = 10.0;        // cost per unserved request
  double gamma = 0.1;           // price-of-information rate
  double interval_s = 30.0;     // decision epoch length
};

enum class RequestState { waiting, assigned, onboard, served, expired };

struct Request {
  RequestId id = 0;
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double request_time = 0.0;
  PlatformId platform = 0;  // platform the customer requested through
  PlatformId owner = 0;     // platform currently holding the request
  RequestState state = RequestState::waiting;
  std::optional<double> pickup_time;
  std::optional<double> dropoff_time;
  Millimeters direct_distance = 0;
  double direct_duration = 0.0;
};

/// Builds a waiting request with its direct distance and duration filled in.
/// Throws Errc::validation_error when origin == destination and
/// Errc::unreachable when the destination cannot be reached.
Request make_request(const RoadNetwork& net, RequestId id, NodeIndex origin,
                     NodeIndex destination, double request_time, PlatformId platform);

enum class StopKind { pickup, dropoff };

struct Stop {
  NodeIndex node = 0;
  RequestId request = 0;
  StopKind kind = StopKind::pickup;

  friend bool operator==(const Stop&, const Stop&) = default;
};

// A rider a vehicle has promised to serve. Carries everything needed to
// re-plan the vehicle's route without looking the request up again.
struct Commitment {
  RequestId request = 0;
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double request_time = 0.0;
  double direct_duration = 0.0;
  double pickup_deadline = 0.0;
  double max_ride_s = 0.0;
  bool onboard = false;
  double pickup_time = 0.0;  // meaningful when onboard
};

struct Vehicle {
  VehicleId id = 0;
  PlatformId platform = 0;
  NodeIndex position = 0;
  /// Time at which the vehicle stands at `position`. Can lie past the current
  /// epoch start when the previous epoch ended mid-edge.
  double ready_time = 0.0;
  std::vector<Stop> schedule;
  std::vector<Commitment> riders;
  int capacity = kVehicleCapacity;
  Millimeters odometer = 0;

  [[nodiscard]] bool idle() const { return schedule.empty(); }
  [[nodiscard]] int onboard_count() const;
};

struct PricingScheme {
  double ded_base = 2.55;
  double ded_per_mile = 1.75;
  double ded_per_min = 0.35;
  double ded_min_fare = 8.00;
  double shr_base = 1.22;
  double shr_per_mile = 0.81;
  double shr_per_min = 0.26;
  double shr_min_fare = 7.84;
  double pay_per_mile = 1.429;
  double pay_per_min = 0.502;

  /// Throws Errc::validation_error if any rate is negative.
  void validate() const;
};

Money dedicated_fare(const PricingScheme& scheme, double distance_m, double duration_s);
Money shared_fare(const PricingScheme& scheme, double distance_m, double duration_s);
Money driver_pay(const PricingScheme& scheme, double distance_m, double duration_s);

/// Fare for one rider given whether the trip carrying it is shared.
Money rider_fare(const PricingScheme& scheme, const Request& rider, bool shared);

/// A planned trip: the requests newly given to a vehicle and the full route
/// the vehicle will drive to serve them along with its earlier commitments.
struct Trip {
  std::vector<RequestId> requests;  // sorted
  VehicleId vehicle = 0;
  std::vector<Stop> route;
  Millimeters total_distance = 0;   // includes the pickup leg
  Millimeters added_distance = 0;   // total_distance minus the vehicle's current plan
  std::vector<std::pair<RequestId, double>> per_request_delay;  // seconds, new riders
  /// Change in summed rider delay (milliseconds) over every rider on the route.
  std::int64_t added_delay_ms = 0;
  int riders_on_route = 0;          // new riders plus earlier commitments
};

/// Fares of the trip's new riders minus driver pay for the distance it adds to
/// the vehicle's plan (the whole route for an idle vehicle). Riders pay shared
/// rates when the route carries two or more requests.
Money trip_profit(const PricingScheme& scheme, const Trip& trip,
                  const std::vector<Request>& riders, const RoadNetwork& net);

}  // namespace marketsim
