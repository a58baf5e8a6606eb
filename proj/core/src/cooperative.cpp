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

#include "marketsim/cooperative.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "marketsim/error.hpp"
#include "marketsim/lp.hpp"

namespace marketsim {
namespace {

bool contains(CoalitionMask mask, std::size_t player) { return (mask >> player) & 1U; }

std::vector<double> factorials(std::size_t n) {
  std::vector<double> f(n + 1, 1.0);
  for (std::size_t k = 1; k <= n; ++k) f[k] = f[k - 1] * static_cast<double>(k);
  return f;
}

// Shared LP for both core-restricted allocation rules: variables x_1..x_n and
// a spread s, minimise s subject to x_i/d_i - x_j/d_j - s <= c_i - c_j, the
// core inequalities, efficiency and x >= 0.
CoreAllocation spread_lp(const CoalitionGame& game, const std::vector<double>& divisor,
                         const std::vector<double>& offset) {
  const std::size_t n = game.size();
  LinearProgram lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      LinearConstraint row{std::vector<double>(n + 1, 0.0), Relation::less_equal,
                           offset[i] - offset[j]};
      row.coefficients[i] = 1.0 / divisor[i];
      row.coefficients[j] = -1.0 / divisor[j];
      row.coefficients[n] = -1.0;
      lp.rows.push_back(std::move(row));
    }
  }
  for (CoalitionMask mask = 1; mask < game.grand(); ++mask) {
    LinearConstraint row{std::vector<double>(n + 1, 0.0), Relation::greater_equal, game.value(mask)};
    for (std::size_t i = 0; i < n; ++i) {
      if (contains(mask, i)) row.coefficients[i] = 1.0;
    }
    lp.rows.push_back(std::move(row));
  }
  LinearConstraint efficiency{std::vector<double>(n + 1, 1.0), Relation::equal,
                              game.value(game.grand())};
  efficiency.coefficients[n] = 0.0;
  lp.rows.push_back(std::move(efficiency));
  // With a single player there are no pairwise rows; pin the spread at zero.
  if (n == 1) {
    LinearConstraint pin{{0.0, 1.0}, Relation::equal, 0.0};
    lp.rows.push_back(std::move(pin));
  }
  lp.lower_bounds.assign(n + 1, 0.0);
  lp.lower_bounds[n] = kFreeVariable;

  const LpResult solved = solve_lp(lp);
  CoreAllocation out;
  if (solved.status != LpStatus::optimal) return out;
  Allocation a;
  a.players = game.players();
  a.x.assign(solved.x.begin(), solved.x.begin() + static_cast<std::ptrdiff_t>(n));
  a.spread = std::max(0.0, solved.x[n]);
  out.allocation = std::move(a);
  return out;
}

}  // namespace

CoalitionGame::CoalitionGame(std::vector<PlatformId> players, std::vector<double> values)
    : players_(std::move(players)), values_(std::move(values)) {
  if (players_.empty()) throw Error(Errc::empty_coalition, "game without players");
  if (players_.size() > kMaxPlayers) {
    throw Error(Errc::too_large, "at most " + std::to_string(kMaxPlayers) + " players");
  }
  if (std::set<PlatformId>(players_.begin(), players_.end()).size() != players_.size()) {
    throw Error(Errc::validation_error, "duplicate player");
  }
  if (values_.size() != (std::size_t{1} << players_.size()) - 1) {
    throw Error(Errc::dimension_mismatch, "expected one value per non-empty coalition");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(Errc::validation_error, "coalition value is not finite");
  }
}

CoalitionGame CoalitionGame::from_function(std::vector<PlatformId> players,
                                           const std::function<double(CoalitionMask)>& v) {
  if (players.size() > kMaxPlayers) {
    throw Error(Errc::too_large, "at most " + std::to_string(kMaxPlayers) + " players");
  }
  std::vector<double> values;
  const CoalitionMask grand = (CoalitionMask{1} << players.size()) - 1;
  for (CoalitionMask mask = 1; mask <= grand && grand != 0; ++mask) values.push_back(v(mask));
  return CoalitionGame(std::move(players), std::move(values));
}

std::string CoalitionGame::key(CoalitionMask mask) const {
  std::vector<PlatformId> ids;
  for (std::size_t i = 0; i < size(); ++i) {
    if (contains(mask, i)) ids.push_back(players_[i]);
  }
  std::sort(ids.begin(), ids.end());
  std::string out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(ids[k]);
  }
  return out;
}

double Allocation::total() const { return std::accumulate(x.begin(), x.end(), 0.0); }

Allocation shapley(const CoalitionGame& game) {
  const std::size_t n = game.size();
  const auto fact = factorials(n);
  Allocation a;
  a.players = game.players();
  a.x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const CoalitionMask bit = CoalitionMask{1} << i;
    for (CoalitionMask s = 0; s <= game.grand(); ++s) {
      if (s & bit) continue;
      const auto size = static_cast<std::size_t>(__builtin_popcount(s));
      const double weight = fact[size] * fact[n - size - 1] / fact[n];
      a.x[i] += weight * (game.value(s | bit) - game.value(s));
    }
  }
  return a;
}

CoreAllocation epm_allocate(const CoalitionGame& game) {
  std::vector<double> divisor(game.size());
  for (std::size_t i = 0; i < game.size(); ++i) {
    divisor[i] = game.standalone(i);
    if (!(divisor[i] > 0.0)) {
      throw Error(Errc::nonpositive_standalone,
                  "player " + std::to_string(game.players()[i]) + " has standalone value " +
                      std::to_string(divisor[i]));
    }
  }
  return spread_lp(game, divisor, std::vector<double>(game.size(), 0.0));
}

ContributionWeights contribution_weights(const std::vector<double>& costs,
                                         const std::vector<double>& revenues,
                                         std::optional<double> total_profit) {
  if (costs.size() != revenues.size()) {
    throw Error(Errc::dimension_mismatch, "costs and revenues differ in length");
  }
  if (costs.empty()) throw Error(Errc::empty_coalition, "no players");
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (costs[i] < 0.0 || revenues[i] < 0.0 || !std::isfinite(costs[i]) ||
        !std::isfinite(revenues[i])) {
      throw Error(Errc::negative_input, "costs and revenues must be non-negative");
    }
  }
  const double sum_c = std::accumulate(costs.begin(), costs.end(), 0.0);
  const double sum_r = std::accumulate(revenues.begin(), revenues.end(), 0.0);
  const double net = sum_r - sum_c;
  const double profit = total_profit.value_or(net);
  if (sum_c == 0.0) throw Error(Errc::zero_denominator, "total cost is zero");
  if (profit == 0.0) throw Error(Errc::zero_denominator, "total profit is zero");
  ContributionWeights out;
  out.theta_cost = net / sum_c;
  out.theta_profit = net / profit;
  const double denom = out.theta_cost * sum_c + out.theta_profit * sum_r;
  if (denom == 0.0) throw Error(Errc::zero_denominator, "weight normaliser is zero");
  for (std::size_t i = 0; i < costs.size(); ++i) {
    out.w.push_back((out.theta_cost * costs[i] + out.theta_profit * revenues[i]) / denom);
  }
  return out;
}

CoreAllocation contribution_allocate(const CoalitionGame& game, const std::vector<double>& w) {
  if (w.size() != game.size()) throw Error(Errc::dimension_mismatch, "one weight per player");
  std::vector<double> offset(game.size());
  for (std::size_t i = 0; i < game.size(); ++i) {
    if (!(w[i] > 0.0)) {
      throw Error(Errc::zero_weight, "player " + std::to_string(game.players()[i]) + " has weight " +
                                         std::to_string(w[i]));
    }
    offset[i] = game.standalone(i) / w[i];
  }
  return spread_lp(game, w, offset);
}

bool in_core(const CoalitionGame& game, const Allocation& a, double tol) {
  if (a.x.size() != game.size()) return false;
  if (std::abs(a.total() - game.value(game.grand())) > tol) return false;
  for (CoalitionMask mask = 1; mask < game.grand(); ++mask) {
    double sum = 0.0;
    for (std::size_t i = 0; i < game.size(); ++i) {
      if (contains(mask, i)) sum += a.x[i];
    }
    if (sum < game.value(mask) - tol) return false;
  }
  return true;
}

}  // namespace marketsim
