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

#include "marketsim/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "marketsim/error.hpp"

namespace marketsim {
namespace {

AssignmentProblem profit_problem(const MarketContext& ctx, const RtvGraph& graph) {
  return AssignmentProblem{&graph, Objective::max_profit, ctx.limits.penalty, ctx.pricing};
}

const Request* find_request(std::span<const Request> pool, RequestId id) {
  auto it = std::find_if(pool.begin(), pool.end(), [id](const Request& r) { return r.id == id; });
  return it == pool.end() ? nullptr : &*it;
}

// Share of `total` proportional to weight / weight_sum, rounded to the mill.
Money proportional(Money total, double weight, double weight_sum) {
  return Money::from_mills(static_cast<std::int64_t>(
      std::llround(static_cast<double>(total.mills()) * weight / weight_sum)));
}

}  // namespace

Money optimal_profit(const MarketContext& ctx, std::span<const Vehicle> fleet,
                     std::span<const Request> pool) {
  if (fleet.empty() || pool.empty()) return Money{};
  const RtvGraph graph = build_rtv_graph(pool, fleet, ctx.net, ctx.now, ctx.limits);
  const Assignment a = solve_assignment(profit_problem(ctx, graph));
  return Money::from_mills(-a.objective);
}

Money platform_valuation(const MarketContext& ctx, std::span<const Vehicle> fleet,
                         std::span<const Request> pool, const Request& request) {
  if (find_request(pool, request.id) != nullptr) {
    throw Error(Errc::validation_error, "request " + std::to_string(request.id) + " already pooled");
  }
  std::vector<Request> grown(pool.begin(), pool.end());
  grown.push_back(request);
  const Money gain = optimal_profit(ctx, fleet, grown) - optimal_profit(ctx, fleet, pool);
  return std::max(gain, Money{});
}

MarketplaceOutcome marketplace_epoch(const MarketContext& ctx, std::vector<Request> broker_pool,
                                     std::vector<PlatformBook>& books, Rng& rng) {
  std::sort(broker_pool.begin(), broker_pool.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });
  rng.shuffle(broker_pool);
  MarketplaceOutcome out;
  // Optimal profit of each book's current pool; refreshed when the pool grows.
  std::vector<Money> base;
  for (const auto& book : books) base.push_back(optimal_profit(ctx, book.fleet, book.pool));

  for (auto& request : broker_pool) {
    std::vector<Bid> bids;
    std::vector<Money> with;
    for (const auto& book : books) {
      std::vector<Request> grown = book.pool;
      grown.push_back(request);
      const Money value = optimal_profit(ctx, book.fleet, grown);
      with.push_back(value);
      bids.push_back({book.id, std::max(value - base[bids.size()], Money{})});
    }
    const auto sale = run_single_item_auction(bids, ctx.limits.gamma);
    if (!sale) {
      out.leftovers.push_back(request);
      continue;
    }
    std::size_t w = 0;
    while (books[w].id != sale->winner) ++w;
    request.owner = sale->winner;
    books[w].pool.push_back(request);
    base[w] = with[w];
    out.awards.emplace_back(request.id, sale->winner);
    out.payments.push_back({ctx.epoch, request.id, sale->winner, sale->payment, bids[w].amount});
  }
  return out;
}

CentralOutcome central_trading_epoch(const MarketContext& ctx, std::span<const Request> unsatisfied,
                                     std::span<const Vehicle> unmatched) {
  CentralOutcome out;
  if (unsatisfied.empty() || unmatched.empty()) return out;
  out.graph = build_rtv_graph(unsatisfied, unmatched, ctx.net, ctx.now, ctx.limits);
  out.assignment = solve_assignment(profit_problem(ctx, out.graph));

  for (std::size_t e : out.assignment.chosen) {
    const TripVehicleEdge& edge = out.graph.edges[e];
    const PlatformId buyer = out.graph.vehicles[edge.vehicle].platform;
    const auto& riders = out.graph.trips[edge.trip];
    if (std::all_of(riders.begin(), riders.end(),
                    [&](RequestId id) { return out.graph.request(id).owner == buyer; })) {
      continue;
    }
    const Money pot = information_price(edge_profit(ctx.pricing, out.graph, edge), ctx.limits.gamma);
    // Standalone profit of each rider alone on this vehicle. Every singleton
    // sub-trip of a feasible trip is itself an edge of the same vehicle.
    std::vector<double> standalone;
    for (RequestId id : riders) {
      double p = 0.0;
      for (const auto& other : out.graph.edges) {
        if (other.vehicle == edge.vehicle && out.graph.trips[other.trip].size() == 1 &&
            out.graph.trips[other.trip].front() == id) {
          p = static_cast<double>(edge_profit(ctx.pricing, out.graph, other).mills());
          break;
        }
      }
      standalone.push_back(std::max(p, 0.0));
    }
    double sum = std::accumulate(standalone.begin(), standalone.end(), 0.0);
    if (sum <= 0.0) {
      std::fill(standalone.begin(), standalone.end(), 1.0);
      sum = static_cast<double>(standalone.size());
    }
    for (std::size_t k = 0; k < riders.size(); ++k) {
      const PlatformId seller = out.graph.request(riders[k]).owner;
      if (seller == buyer) continue;
      out.trades.push_back({ctx.epoch, riders[k], seller, buyer, proportional(pot, standalone[k], sum)});
    }
  }
  return out;
}

BilateralOutcome bilateral_trading_round(const MarketContext& ctx,
                                         const std::vector<PlatformBook>& books,
                                         const std::set<RequestId>& already_traded, Rng& rng) {
  BilateralOutcome out;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < books.size(); ++i) {
    for (std::size_t j = i + 1; j < books.size(); ++j) pairs.emplace_back(i, j);
  }
  rng.shuffle(pairs);
  std::set<RequestId> sold;
  std::vector<Money> base(books.size());  // buyer profit on its bought pool

  for (const auto& [i, j] : pairs) {
    std::vector<std::pair<Request, std::size_t>> offered;  // request, seller book
    for (std::size_t s : {i, j}) {
      for (const auto& r : books[s].pool) {
        if (!already_traded.count(r.id) && !sold.count(r.id)) offered.emplace_back(r, s);
      }
    }
    std::sort(offered.begin(), offered.end(),
              [](const auto& a, const auto& b) { return a.first.id < b.first.id; });
    rng.shuffle(offered);
    for (auto& [request, s] : offered) {
      const std::size_t b = s == i ? j : i;
      const PlatformBook& buyer = books[b];
      std::vector<Request> grown = out.bought[buyer.id];
      grown.push_back(request);
      const Money value = optimal_profit(ctx, buyer.fleet, grown);
      const Money marginal = value - base[b];
      if (marginal <= Money{}) continue;
      out.trades.push_back({ctx.epoch, request.id, books[s].id, buyer.id,
                            information_price(marginal, ctx.limits.gamma)});
      request.owner = buyer.id;
      out.bought[buyer.id].push_back(request);
      base[b] = value;
      sold.insert(request.id);
    }
  }
  return out;
}

}  // namespace marketsim
