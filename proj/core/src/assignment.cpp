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

#include "marketsim/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <string>

#include "marketsim/error.hpp"
#include "marketsim/lp.hpp"

namespace marketsim {
namespace {

constexpr double kIntegralTol = 1e-6;

// Set-packing view of the assignment. Every request starts unserved at cost
// K_r; choosing edge e replaces those costs by K_e. Composite costs
// K = cost * W + 1 per chosen edge, with W larger than any possible edge
// count, fold the "fewer trips" tie-break into one integer objective.
class Packing {
 public:
  explicit Packing(const AssignmentProblem& p) : graph_(*p.graph) {
    weight_ = static_cast<std::int64_t>(graph_.vehicles.size()) + 1;
    request_cost_ = unserved_cost(p) * weight_;
    const std::size_t ne = graph_.edges.size();
    members_.resize(ne);
    gain_.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
      for (RequestId id : graph_.trips[graph_.edges[e].trip]) {
        members_[e].push_back(graph_.request_index(id));
      }
      gain_[e] = edge_cost(p, graph_.edges[e]) * weight_ + 1 -
                 request_cost_ * static_cast<std::int64_t>(members_[e].size());
    }
    base_ = request_cost_ * static_cast<std::int64_t>(graph_.requests.size());
  }

  [[nodiscard]] std::size_t edge_count() const { return gain_.size(); }
  [[nodiscard]] std::size_t vehicle_of(std::size_t e) const { return graph_.edges[e].vehicle; }
  [[nodiscard]] const std::vector<std::size_t>& members(std::size_t e) const { return members_[e]; }

  [[nodiscard]] std::int64_t composite(const std::vector<std::size_t>& chosen) const {
    std::int64_t total = base_;
    for (std::size_t e : chosen) total += gain_[e];
    return total;
  }

  [[nodiscard]] bool conflicts(std::size_t a, std::size_t b) const {
    if (vehicle_of(a) == vehicle_of(b)) return true;
    for (std::size_t r : members_[a]) {
      if (std::find(members_[b].begin(), members_[b].end(), r) != members_[b].end()) return true;
    }
    return false;
  }

  struct Relaxation {
    double bound = 0.0;
    static constexpr std::size_t kNoBranch = std::numeric_limits<std::size_t>::max();
    std::size_t branch = kNoBranch;
    std::vector<std::size_t> integral;  // chosen edges when branch == kNoBranch
  };

  // LP relaxation with `in` forced and `out` removed; nullopt when the forced
  // edges clash.
  [[nodiscard]] std::optional<Relaxation> relax(const std::vector<std::size_t>& in,
                                                const std::vector<bool>& out) const {
    std::vector<bool> vehicle_used(graph_.vehicles.size(), false);
    std::vector<bool> request_used(graph_.requests.size(), false);
    for (std::size_t e : in) {
      if (vehicle_used[vehicle_of(e)]) return std::nullopt;
      vehicle_used[vehicle_of(e)] = true;
      for (std::size_t r : members_[e]) {
        if (request_used[r]) return std::nullopt;
        request_used[r] = true;
      }
    }
    // Edges with non-negative gain never improve a packing.
    std::vector<std::size_t> active;
    for (std::size_t e = 0; e < edge_count(); ++e) {
      if (out[e] || gain_[e] >= 0 || vehicle_used[vehicle_of(e)]) continue;
      if (std::none_of(members_[e].begin(), members_[e].end(),
                       [&](std::size_t r) { return request_used[r]; })) {
        active.push_back(e);
      }
    }

    Relaxation result;
    result.integral = in;
    const double fixed = static_cast<double>(composite(in));
    if (active.empty()) {
      result.bound = fixed;
      return result;
    }

    double scale = 1.0;
    for (std::size_t e : active) scale = std::max(scale, std::abs(static_cast<double>(gain_[e])));
    LinearProgram lp;
    lp.objective.resize(active.size());
    std::vector<int> vehicle_row(graph_.vehicles.size(), -1);
    std::vector<int> request_row(graph_.requests.size(), -1);
    auto touch = [&](int& row, std::size_t column) {
      if (row < 0) {
        row = static_cast<int>(lp.rows.size());
        lp.rows.push_back({std::vector<double>(active.size(), 0.0), Relation::less_equal, 1.0});
      }
      lp.rows[static_cast<std::size_t>(row)].coefficients[column] = 1.0;
    };
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::size_t e = active[k];
      lp.objective[k] = static_cast<double>(gain_[e]) / scale;
      touch(vehicle_row[vehicle_of(e)], k);
      for (std::size_t r : members_[e]) touch(request_row[r], k);
    }
    const LpResult solved = solve_lp(lp);
    if (solved.status != LpStatus::optimal) {
      throw Error(Errc::validation_error, "assignment relaxation has no optimum");
    }
    result.bound = fixed + solved.value * scale;
    double most = 0.0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const double x = solved.x[k];
      const double frac = std::min(x, 1.0 - x);
      if (frac > kIntegralTol) {
        if (frac > most + 1e-12) {
          most = frac;
          result.branch = active[k];
        }
      } else if (x > 0.5) {
        result.integral.push_back(active[k]);
      }
    }
    std::sort(result.integral.begin(), result.integral.end());
    return result;
  }

 private:
  const RtvGraph& graph_;
  std::int64_t weight_ = 1;
  std::int64_t request_cost_ = 0;
  std::int64_t base_ = 0;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::int64_t> gain_;
};

struct Solution {
  std::vector<std::size_t> chosen;  // ascending
  std::int64_t composite = 0;
};

// Best-first branch and bound. Without a target it returns the optimum of the
// restricted problem. With a target it returns the first solution reaching
// it, or nullopt if none exists.
std::optional<Solution> branch_and_bound(const Packing& packing, const std::vector<std::size_t>& fixed_in,
                                         const std::vector<bool>& fixed_out,
                                         std::optional<std::int64_t> target) {
  std::optional<Solution> incumbent;
  std::int64_t cutoff = target ? *target + 1 : std::numeric_limits<std::int64_t>::max();

  struct Node {
    double bound;
    std::size_t order;
    std::size_t branch;
    std::vector<std::size_t> in;
    std::vector<bool> out;
  };
  auto worse = [](const Node& a, const Node& b) {
    return a.bound != b.bound ? a.bound > b.bound : a.order > b.order;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::size_t created = 0;

  auto evaluate = [&](std::vector<std::size_t> in, std::vector<bool> out) {
    auto relaxed = packing.relax(in, out);
    if (!relaxed || relaxed->bound >= static_cast<double>(cutoff) - 0.5) return;
    if (relaxed->branch != Packing::Relaxation::kNoBranch) {
      open.push(Node{relaxed->bound, created++, relaxed->branch, std::move(in), std::move(out)});
      return;
    }
    const std::int64_t value = packing.composite(relaxed->integral);
    if (value < cutoff) {
      cutoff = value;
      incumbent = Solution{std::move(relaxed->integral), value};
    }
  };

  evaluate(fixed_in, fixed_out);
  while (!open.empty()) {
    if (target && incumbent) break;
    Node node = open.top();
    open.pop();
    if (node.bound >= static_cast<double>(cutoff) - 0.5) continue;
    std::vector<std::size_t> up = node.in;
    up.insert(std::upper_bound(up.begin(), up.end(), node.branch), node.branch);
    evaluate(std::move(up), node.out);
    node.out[node.branch] = true;
    evaluate(std::move(node.in), std::move(node.out));
  }
  return incumbent;
}

Assignment finish(const AssignmentProblem& problem, std::vector<std::size_t> chosen) {
  const RtvGraph& g = *problem.graph;
  Assignment out;
  std::sort(chosen.begin(), chosen.end());
  std::vector<bool> served(g.requests.size(), false);
  for (std::size_t e : chosen) {
    out.objective += edge_cost(problem, g.edges[e]);
    for (RequestId id : g.trips[g.edges[e].trip]) served[g.request_index(id)] = true;
  }
  for (std::size_t r = 0; r < g.requests.size(); ++r) {
    if (!served[r]) {
      out.unserved.push_back(g.requests[r].id);
      out.objective += unserved_cost(problem);
    }
  }
  out.chosen = std::move(chosen);
  return out;
}

void require_graph(const AssignmentProblem& problem) {
  if (problem.graph == nullptr) throw Error(Errc::validation_error, "assignment without a graph");
  if (!(problem.penalty >= 0.0) || !std::isfinite(problem.penalty)) {
    throw Error(Errc::negative_input, "penalty must be non-negative");
  }
}

}  // namespace

Money edge_profit(const PricingScheme& pricing, const RtvGraph& graph, const TripVehicleEdge& edge) {
  const bool shared = edge.plan.riders_on_route >= 2;
  Money fares;
  for (RequestId id : edge.plan.requests) fares += rider_fare(pricing, graph.request(id), shared);
  const Millimeters added = edge.plan.added_distance;
  const Millimeters magnitude = added < 0 ? -added : added;
  const double meters = static_cast<double>(magnitude) / 1000.0;
  const Money pay = driver_pay(pricing, meters, meters / graph.speed_mps);
  return fares - (added < 0 ? -pay : pay);
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::min_delay_penalty: return "min_delay_penalty";
    case Objective::min_vmt_penalty: return "min_vmt_penalty";
    case Objective::max_profit: return "max_profit";
  }
  return "unknown";
}

Objective parse_objective(std::string_view name) {
  for (auto o : {Objective::min_delay_penalty, Objective::min_vmt_penalty, Objective::max_profit}) {
    if (to_string(o) == name) return o;
  }
  throw Error(Errc::validation_error, "unknown objective '" + std::string(name) + "'");
}

double objective_scale(Objective objective) {
  switch (objective) {
    case Objective::min_delay_penalty: return 60'000.0;
    case Objective::min_vmt_penalty: return static_cast<double>(kMillimetersPerMile);
    case Objective::max_profit: return static_cast<double>(Money::kPerDollar);
  }
  return 1.0;
}

std::int64_t edge_cost(const AssignmentProblem& problem, const TripVehicleEdge& edge) {
  switch (problem.objective) {
    case Objective::min_delay_penalty: return edge.plan.added_delay_ms;
    case Objective::min_vmt_penalty: return edge.plan.added_distance;
    case Objective::max_profit: return -edge_profit(problem.pricing, *problem.graph, edge).mills();
  }
  return 0;
}

std::int64_t unserved_cost(const AssignmentProblem& problem) {
  if (problem.objective == Objective::max_profit) return 0;
  return static_cast<std::int64_t>(std::llround(problem.penalty * objective_scale(problem.objective)));
}

Assignment solve_assignment(const AssignmentProblem& problem) {
  require_graph(problem);
  const Packing packing(problem);
  const std::size_t ne = packing.edge_count();
  std::vector<bool> none(ne, false);
  auto best = branch_and_bound(packing, {}, none, std::nullopt);
  Solution incumbent = best ? std::move(*best) : Solution{{}, packing.composite({})};

  // Lexicographic tie-break: walk edges in id order and keep an edge whenever
  // some optimal assignment still contains it alongside the edges kept so far.
  const std::int64_t optimum = incumbent.composite;
  const std::size_t count = incumbent.chosen.size();
  std::vector<std::size_t> kept;
  std::vector<bool> dropped(ne, false);
  for (std::size_t e = 0; e < ne && kept.size() < count; ++e) {
    if (std::any_of(kept.begin(), kept.end(), [&](std::size_t k) { return packing.conflicts(e, k); })) {
      dropped[e] = true;
      continue;
    }
    const bool in_incumbent =
        std::binary_search(incumbent.chosen.begin(), incumbent.chosen.end(), e);
    if (!in_incumbent) {
      std::vector<std::size_t> trial = kept;
      trial.push_back(e);
      auto found = branch_and_bound(packing, trial, dropped, optimum);
      if (found && found->composite == optimum) {
        incumbent = std::move(*found);
      } else {
        dropped[e] = true;
        continue;
      }
    }
    kept.push_back(e);
  }
  return finish(problem, std::move(incumbent.chosen));
}

Assignment brute_force_assignment(const AssignmentProblem& problem) {
  require_graph(problem);
  const RtvGraph& g = *problem.graph;
  if (g.requests.size() > kBruteForceMaxRequests || g.vehicles.size() > kBruteForceMaxVehicles) {
    throw Error(Errc::too_large, "brute force is limited to " + std::to_string(kBruteForceMaxRequests) +
                                     " requests and " + std::to_string(kBruteForceMaxVehicles) +
                                     " vehicles");
  }
  const Packing packing(problem);
  std::vector<std::vector<std::size_t>> by_vehicle(g.vehicles.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) by_vehicle[g.edges[e].vehicle].push_back(e);

  std::optional<Solution> best;
  std::vector<std::size_t> current;
  std::vector<bool> used(g.requests.size(), false);
  // Vehicles are visited in index order and edges are grouped by vehicle, so
  // `current` is always ascending.
  auto visit = [&](auto&& self, std::size_t vi) -> void {
    if (vi == by_vehicle.size()) {
      const std::int64_t value = packing.composite(current);
      if (!best || value < best->composite || (value == best->composite && current < best->chosen)) {
        best = Solution{current, value};
      }
      return;
    }
    self(self, vi + 1);
    for (std::size_t e : by_vehicle[vi]) {
      const auto& m = packing.members(e);
      if (std::any_of(m.begin(), m.end(), [&](std::size_t r) { return used[r]; })) continue;
      for (std::size_t r : m) used[r] = true;
      current.push_back(e);
      self(self, vi + 1);
      current.pop_back();
      for (std::size_t r : m) used[r] = false;
    }
  };
  visit(visit, 0);
  return finish(problem, best ? best->chosen : std::vector<std::size_t>{});
}

}  // namespace marketsim
