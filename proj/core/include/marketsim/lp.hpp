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

#include <limits>
#include <vector>

namespace marketsim {

enum class Relation { less_equal, greater_equal, equal };

struct LinearConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

/// minimize objective . x subject to rows, x >= lower_bounds. A lower bound of
/// -infinity makes the variable free. Empty lower_bounds means all zero.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> rows;
  std::vector<double> lower_bounds;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> x;
};

inline constexpr double kFreeVariable = -std::numeric_limits<double>::infinity();

/// Two-phase dense tableau simplex with Bland's rule. Throws
/// Errc::dimension_mismatch when row or bound lengths disagree with the
/// objective.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace marketsim
