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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "marketsim/model.hpp"

namespace marketsim {

using CoalitionMask = std::uint32_t;

inline constexpr std::size_t kMaxPlayers = 12;

// Transferable-utility game over platforms. Coalitions are bit masks over the
// player list: bit k set means players()[k] belongs to the coalition.
class CoalitionGame {
 public:
  /// `values[mask - 1]` is v(mask) for every non-empty mask.
  CoalitionGame(std::vector<PlatformId> players, std::vector<double> values);

  static CoalitionGame from_function(std::vector<PlatformId> players,
                                     const std::function<double(CoalitionMask)>& v);

  [[nodiscard]] std::size_t size() const { return players_.size(); }
  [[nodiscard]] const std::vector<PlatformId>& players() const { return players_; }
  [[nodiscard]] CoalitionMask grand() const { return (CoalitionMask{1} << size()) - 1; }
  /// v(∅) = 0.
  [[nodiscard]] double value(CoalitionMask mask) const {
    return mask == 0 ? 0.0 : values_.at(mask - 1);
  }
  [[nodiscard]] double standalone(std::size_t player) const {
    return value(CoalitionMask{1} << player);
  }
  /// Comma-joined player ids of the coalition in ascending order, e.g. "1,2".
  [[nodiscard]] std::string key(CoalitionMask mask) const;

 private:
  std::vector<PlatformId> players_;
  std::vector<double> values_;
};

struct Allocation {
  std::vector<PlatformId> players;
  std::vector<double> x;
  /// Optimal alpha (EPM) or beta (contribution); zero for Shapley.
  double spread = 0.0;

  [[nodiscard]] double total() const;
};

Allocation shapley(const CoalitionGame& game);

/// Allocation LP result; nullopt allocation means the core is empty.
struct CoreAllocation {
  std::optional<Allocation> allocation;
  [[nodiscard]] bool core_empty() const { return !allocation.has_value(); }
};

/// Equal Profit Method: minimise the largest pairwise gap in x_i / v({i})
/// over the core. Throws Errc::nonpositive_standalone when some v({i}) <= 0.
CoreAllocation epm_allocate(const CoalitionGame& game);

struct ContributionWeights {
  std::vector<double> w;
  double theta_cost = 0.0;    // profit margin on cost
  double theta_profit = 0.0;  // gross profit margin
};

/// w_i = (t1*c_i + t2*R_i) / (t1*sum c + t2*sum R) where t1 = net / sum c and
/// t2 = net / total_profit with net = sum R - sum c. `total_profit` defaults
/// to the net revenue. Throws Errc::negative_input and Errc::zero_denominator.
ContributionWeights contribution_weights(const std::vector<double>& costs,
                                         const std::vector<double>& revenues,
                                         std::optional<double> total_profit = std::nullopt);

/// Minimise the largest pairwise gap in (x_i - v({i})) / w_i over the core.
/// Throws Errc::zero_weight when some w_i <= 0.
CoreAllocation contribution_allocate(const CoalitionGame& game, const std::vector<double>& w);

/// Efficiency and coalitional rationality, checked over every proper coalition.
bool in_core(const CoalitionGame& game, const Allocation& x, double tol);

}  // namespace marketsim
