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

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace marketsim {

/// Fixed-point currency in tenths of a cent ("mills"). All ledger arithmetic
/// happens on the integer representation so balances add up exactly.
class Money {
 public:
  static constexpr std::int64_t kPerDollar = 1000;

  constexpr Money() = default;

  static constexpr Money from_mills(std::int64_t mills) { return Money(mills); }
  /// Rounds half away from zero to the nearest mill.
  static Money from_dollars(double dollars) {
    return Money(static_cast<std::int64_t>(std::llround(dollars * kPerDollar)));
  }

  [[nodiscard]] constexpr std::int64_t mills() const { return mills_; }
  [[nodiscard]] constexpr double dollars() const {
    return static_cast<double>(mills_) / kPerDollar;
  }

  constexpr Money& operator+=(Money o) { mills_ += o.mills_; return *this; }
  constexpr Money& operator-=(Money o) { mills_ -= o.mills_; return *this; }
  friend constexpr Money operator+(Money a, Money b) { return Money(a.mills_ + b.mills_); }
  friend constexpr Money operator-(Money a, Money b) { return Money(a.mills_ - b.mills_); }
  friend constexpr Money operator-(Money a) { return Money(-a.mills_); }
  friend constexpr auto operator<=>(Money, Money) = default;

  /// Decimal rendering with four places, e.g. "9.5500".
  [[nodiscard]] std::string to_string() const;

 private:
  constexpr explicit Money(std::int64_t mills) : mills_(mills) {}
  std::int64_t mills_ = 0;
};

inline constexpr double kMetersPerMile = 1609.344;
inline constexpr std::int64_t kMillimetersPerMile = 1'609'344;

}  // namespace marketsim
