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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "marketsim/assignment.hpp"
#include "marketsim/auction.hpp"
#include "marketsim/model.hpp"
#include "marketsim/rng.hpp"
#include "marketsim/rtv.hpp"

namespace marketsim {

/// Read-only view of the world a mechanism decides in.
struct MarketContext {
  const RoadNetwork& net;
  const Constraints& limits;
  const PricingScheme& pricing;
  double now = 0.0;
  std::size_t epoch = 0;
};

/// Maximum total profit `fleet` can earn serving requests from `pool`.
Money optimal_profit(const MarketContext& ctx, std::span<const Vehicle> fleet,
                     std::span<const Request> pool);

/// Marginal profit of adding `request` to the platform's pool, floored at 0.
Money platform_valuation(const MarketContext& ctx, std::span<const Vehicle> fleet,
                         std::span<const Request> pool, const Request& request);

struct TradeRecord {
  std::size_t epoch = 0;
  RequestId request = 0;
  PlatformId seller = 0;
  PlatformId buyer = 0;
  Money info_price;
};

struct AuctionRecord {
  std::size_t epoch = 0;
  RequestId request = 0;
  PlatformId winner = 0;
  Money payment;
  Money winning_bid;
};

/// One platform as the broker and trading partners see it.
struct PlatformBook {
  PlatformId id = 0;
  std::vector<Vehicle> fleet;
  std::vector<Request> pool;  // requests the platform holds and has not yet matched
};

struct MarketplaceOutcome {
  std::vector<std::pair<RequestId, PlatformId>> awards;  // in sale order
  std::vector<AuctionRecord> payments;
  std::vector<Request> leftovers;  // unsold, back to the broker
};

/// Sells the broker's pool one request at a time in a random order. Each
/// platform bids its valuation; a won request joins the winner's pool at once
/// so later valuations see it.
MarketplaceOutcome marketplace_epoch(const MarketContext& ctx, std::vector<Request> broker_pool,
                                     std::vector<PlatformBook>& books, Rng& rng);

struct CentralOutcome {
  std::vector<TradeRecord> trades;
  RtvGraph graph;         // pooled graph the broker matched on
  Assignment assignment;  // chosen edges refer to `graph`
};

/// The broker pools every platform's unsatisfied requests and unmatched
/// vehicles and solves one profit-maximising assignment. A vehicle serving a
/// request of another platform makes its platform pay gamma * p to the
/// seller, where p is the trip profit; shared trips split gamma * p in
/// proportion to each rider's standalone profit on that vehicle. Request
/// ownership is read from Request::owner.
CentralOutcome central_trading_epoch(const MarketContext& ctx, std::span<const Request> unsatisfied,
                                     std::span<const Vehicle> unmatched);

struct BilateralOutcome {
  std::vector<TradeRecord> trades;
  std::map<PlatformId, std::vector<Request>> bought;  // per buyer, owner updated
};

/// One bilateral trading round. Platform pairs are visited in a random order;
/// inside a pair the union of both unsatisfied sets is visited in a random
/// order and a request moves to the other platform when that platform's
/// marginal profit over all its vehicles is positive. Requests listed in
/// `already_traded` and requests sold earlier in the round are skipped.
BilateralOutcome bilateral_trading_round(const MarketContext& ctx,
                                         const std::vector<PlatformBook>& books,
                                         const std::set<RequestId>& already_traded, Rng& rng);

}  // namespace marketsim
