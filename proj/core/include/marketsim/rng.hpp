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
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace marketsim {

// Named random substreams derived from the single scenario seed.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The per-stream seed is splitmix64(seed ^ fnv1a64(stream)). Bounded
// draws use rejection sampling on the raw 64-bit output rather than
// std::uniform_int_distribution, whose algorithm is implementation-defined, so
// every randomized order replays identically across standard libraries.
namespace streams {
inline constexpr std::string_view kPlacement = "placement";
inline constexpr std::string_view kDemandSplit = "demand-split";
inline constexpr std::string_view kDemand = "demand";
inline constexpr std::string_view kAuctionOrder = "auction-order";
inline constexpr std::string_view kTradingOrder = "trading-order";
}  // namespace streams

class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view stream);

}  // namespace marketsim
