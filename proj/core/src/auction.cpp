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

#include "marketsim/auction.hpp"

#include <cmath>
#include <string>

#include "marketsim/error.hpp"

namespace marketsim {

Money information_price(Money amount, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(Errc::invalid_gamma, "gamma " + std::to_string(gamma) + " outside [0, 1]");
  }
  return Money::from_mills(
      static_cast<std::int64_t>(std::llround(static_cast<double>(amount.mills()) * gamma)));
}

std::optional<AuctionOutcome> run_single_item_auction(std::span<const Bid> bids, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(Errc::invalid_gamma, "gamma " + std::to_string(gamma) + " outside [0, 1]");
  }
  const Bid* best = nullptr;
  for (const auto& b : bids) {
    if (b.amount < Money{}) throw Error(Errc::negative_input, "negative bid");
    if (!best || b.amount > best->amount ||
        (b.amount == best->amount && b.platform < best->platform)) {
      best = &b;
    }
  }
  if (!best || best->amount == Money{}) return std::nullopt;
  Money second;
  for (const auto& b : bids) {
    if (&b != best && b.amount > second) second = b.amount;
  }
  return AuctionOutcome{best->platform, information_price(second, gamma)};
}

}  // namespace marketsim
