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

#include "marketsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "marketsim/error.hpp"

namespace marketsim {
namespace {

void require_non_negative(double distance_m, double duration_s) {
  if (distance_m < 0.0 || duration_s < 0.0 || !std::isfinite(distance_m) ||
      !std::isfinite(duration_s)) {
    throw Error(Errc::negative_input,
                "distance " + std::to_string(distance_m) + " m, duration " +
                    std::to_string(duration_s) + " s");
  }
}

double linear_price(double base, double per_mile, double per_min, double distance_m,
                    double duration_s) {
  return base + per_mile * (distance_m / kMetersPerMile) + per_min * (duration_s / 60.0);
}

Money signed_pay(const PricingScheme& scheme, Millimeters added, const RoadNetwork& net) {
  const Millimeters magnitude = added < 0 ? -added : added;
  const double meters = static_cast<double>(magnitude) / 1000.0;
  const Money pay = driver_pay(scheme, meters, net.travel_time(magnitude));
  return added < 0 ? -pay : pay;
}

}  // namespace

Request make_request(const RoadNetwork& net, RequestId id, NodeIndex origin,
                     NodeIndex destination, double request_time, PlatformId platform) {
  if (origin >= net.node_count() || destination >= net.node_count()) {
    throw Error(Errc::unknown_node, "request " + std::to_string(id));
  }
  if (origin == destination) {
    throw Error(Errc::validation_error,
                "request " + std::to_string(id) + " has identical origin and destination");
  }
  if (!net.reachable(origin, destination)) {
    throw Error(Errc::unreachable, "request " + std::to_string(id));
  }
  if (!(request_time >= 0.0)) {
    throw Error(Errc::validation_error, "request " + std::to_string(id) + " has negative time");
  }
  Request r;
  r.id = id;
  r.origin = origin;
  r.destination = destination;
  r.request_time = request_time;
  r.platform = platform;
  r.owner = platform;
  r.direct_distance = net.distance(origin, destination);
  r.direct_duration = net.travel_time(r.direct_distance);
  return r;
}

int Vehicle::onboard_count() const {
  return static_cast<int>(
      std::count_if(riders.begin(), riders.end(), [](const Commitment& c) { return c.onboard; }));
}

void PricingScheme::validate() const {
  for (double v : {ded_base, ded_per_mile, ded_per_min, ded_min_fare, shr_base, shr_per_mile,
                   shr_per_min, shr_min_fare, pay_per_mile, pay_per_min}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(Errc::validation_error, "pricing rates must be non-negative");
    }
  }
}

Money dedicated_fare(const PricingScheme& s, double distance_m, double duration_s) {
  require_non_negative(distance_m, duration_s);
  const double raw = linear_price(s.ded_base, s.ded_per_mile, s.ded_per_min, distance_m, duration_s);
  return Money::from_dollars(std::max(s.ded_min_fare, raw));
}

Money shared_fare(const PricingScheme& s, double distance_m, double duration_s) {
  require_non_negative(distance_m, duration_s);
  const double raw = linear_price(s.shr_base, s.shr_per_mile, s.shr_per_min, distance_m, duration_s);
  return Money::from_dollars(std::max(s.shr_min_fare, raw));
}

Money driver_pay(const PricingScheme& s, double distance_m, double duration_s) {
  require_non_negative(distance_m, duration_s);
  return Money::from_dollars(linear_price(0.0, s.pay_per_mile, s.pay_per_min, distance_m, duration_s));
}

Money rider_fare(const PricingScheme& scheme, const Request& rider, bool shared) {
  const double meters = static_cast<double>(rider.direct_distance) / 1000.0;
  return shared ? shared_fare(scheme, meters, rider.direct_duration)
                : dedicated_fare(scheme, meters, rider.direct_duration);
}

Money trip_profit(const PricingScheme& scheme, const Trip& trip,
                  const std::vector<Request>& riders, const RoadNetwork& net) {
  const bool shared = trip.riders_on_route >= 2;
  Money total;
  for (RequestId id : trip.requests) {
    auto it = std::find_if(riders.begin(), riders.end(),
                           [id](const Request& r) { return r.id == id; });
    if (it == riders.end()) {
      throw Error(Errc::validation_error, "trip rider " + std::to_string(id) + " not supplied");
    }
    total += rider_fare(scheme, *it, shared);
  }
  return total - signed_pay(scheme, trip.added_distance, net);
}

}  // namespace marketsim
