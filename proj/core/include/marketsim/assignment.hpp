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
#include <string_view>
#include <vector>

#include "marketsim/model.hpp"
#include "marketsim/rtv.hpp"

namespace marketsim {

enum class Objective {
  min_delay_penalty,  // rider delay in minutes + C per unserved request
  min_vmt_penalty,    // added route miles + C per unserved request
  max_profit,         // negated trip profit, unserved requests cost nothing
};

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view name);

struct AssignmentProblem {
  const RtvGraph* graph = nullptr;
  Objective objective = Objective::min_vmt_penalty;
  double penalty = 10.0;
  PricingScheme pricing;
};

// Costs are integers in the objective's fixed-point unit: millimetres for
// VMT, milliseconds for delay, mills for profit.
std::int64_t edge_cost(const AssignmentProblem& problem, const TripVehicleEdge& edge);
std::int64_t unserved_cost(const AssignmentProblem& problem);
/// Fares of the edge's new riders minus driver pay on the distance it adds.
Money edge_profit(const PricingScheme& pricing, const RtvGraph& graph, const TripVehicleEdge& edge);
/// Objective units per natural unit (mile, minute or dollar).
double objective_scale(Objective objective);

struct Assignment {
  std::vector<std::size_t> chosen;  // edge ids, ascending
  std::vector<RequestId> unserved;  // ascending
  std::int64_t objective = 0;       // fixed-point

  [[nodiscard]] double objective_value(Objective kind) const {
    return static_cast<double>(objective) / objective_scale(kind);
  }
};

/// Exact optimum by LP-based branch and bound. Among optimal assignments the
/// one with fewer chosen trips wins, then the lexicographically smallest
/// sorted edge-id list.
Assignment solve_assignment(const AssignmentProblem& problem);

inline constexpr std::size_t kBruteForceMaxRequests = 8;
inline constexpr std::size_t kBruteForceMaxVehicles = 5;

/// Exhaustive enumeration with the same tie-breaking. Throws Errc::too_large
/// beyond kBruteForceMaxRequests requests or kBruteForceMaxVehicles vehicles.
Assignment brute_force_assignment(const AssignmentProblem& problem);

}  // namespace marketsim
