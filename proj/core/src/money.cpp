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

#include "marketsim/money.hpp"

#include <fmt/format.h>

#include <cstdlib>

namespace marketsim {

std::string Money::to_string() const {
  const std::int64_t whole = std::llabs(mills_) / kPerDollar;
  const std::int64_t frac = std::llabs(mills_) % kPerDollar;
  return fmt::format("{}{}.{:03d}0", mills_ < 0 ? "-" : "", whole, frac);
}

}  // namespace marketsim
