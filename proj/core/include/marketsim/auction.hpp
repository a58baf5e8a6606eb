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

#include "marketsim/model.hpp"

namespace marketsim {

struct Bid {
  PlatformId platform = 0;
  Money amount;
};

struct AuctionOutcome {
  PlatformId winner = 0;
  Money payment;
};

/// Sealed-bid single-item auction: the highest bid wins (lowest platform id
/// on ties) and pays gamma times the second-highest bid, rounded to the mill.
/// nullopt (no sale) when every bid is zero. Throws Errc::invalid_gamma
/// outside [0, 1] and Errc::negative_input for negative bids.
std::optional<AuctionOutcome> run_single_item_auction(std::span<const Bid> bids, double gamma);

/// gamma * amount rounded to the nearest mill.
Money information_price(Money amount, double gamma);

}  // namespace marketsim
