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

#include "marketsim/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "marketsim/error.hpp"

namespace marketsim {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr std::size_t kIterationCap = 200000;

// Dense tableau. Row r holds the constraint coefficients followed by the
// right-hand side; `cost` is the reduced-cost row with -z in the last slot.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols), cells_(rows * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t rows() const { return cells_.size() / (cols_ + 1); }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<double>& cost) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    const double f = cost[pc];
    if (f != 0.0) {
      for (std::size_t c = 0; c <= cols_; ++c) cost[c] -= f * at(pr, c);
      cost[pc] = 0.0;
    }
  }

  void erase_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                 cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
  }

 private:
  std::size_t cols_;
  std::vector<double> cells_;
};

enum class Outcome { optimal, unbounded };

// Bland's rule: lowest-index improving column enters; among tied ratios the
// row whose basic variable has the lowest index leaves.
Outcome iterate(Tableau& t, std::vector<double>& cost, std::vector<std::size_t>& basis,
                std::size_t usable_cols) {
  for (std::size_t iter = 0; iter < kIterationCap; ++iter) {
    std::size_t enter = usable_cols;
    for (std::size_t c = 0; c < usable_cols; ++c) {
      if (cost[c] < -kCostTol) { enter = c; break; }
    }
    if (enter == usable_cols) return Outcome::optimal;
    std::size_t leave = t.rows();
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = t.rhs(r) / a;
      if (leave == t.rows() || ratio < best_ratio - 1e-12 ||
          (std::abs(ratio - best_ratio) <= 1e-12 && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == t.rows()) return Outcome::unbounded;
    t.pivot(leave, enter, cost);
    basis[leave] = enter;
  }
  throw Error(Errc::dimension_mismatch, "simplex iteration cap reached");
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n) {
    throw Error(Errc::dimension_mismatch, "lower bounds length " +
                                              std::to_string(lp.lower_bounds.size()) +
                                              " vs " + std::to_string(n) + " variables");
  }
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    if (lp.rows[r].coefficients.size() != n) {
      throw Error(Errc::dimension_mismatch, "row " + std::to_string(r) + " has " +
                                                std::to_string(lp.rows[r].coefficients.size()) +
                                                " coefficients, expected " + std::to_string(n));
    }
  }

  // Shift finite lower bounds to zero and split free variables in two.
  std::vector<double> lb(n, 0.0);
  if (!lp.lower_bounds.empty()) lb = lp.lower_bounds;
  std::vector<std::size_t> column_of(n);
  std::vector<bool> is_free(n);
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    is_free[j] = std::isinf(lb[j]) && lb[j] < 0;
    column_of[j] = structural;
    structural += is_free[j] ? 2 : 1;
  }

  const std::size_t m = lp.rows.size();
  std::vector<Relation> rel(m);
  std::vector<double> rhs(m);
  std::vector<double> sign(m, 1.0);
  std::size_t slacks = 0, artificials = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    double b = row.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_free[j]) b -= row.coefficients[j] * lb[j];
    }
    rel[r] = row.relation;
    rhs[r] = b;
    if (b < 0) {
      rhs[r] = -b;
      sign[r] = -1.0;
      if (rel[r] == Relation::less_equal) rel[r] = Relation::greater_equal;
      else if (rel[r] == Relation::greater_equal) rel[r] = Relation::less_equal;
    }
    if (rel[r] != Relation::equal) ++slacks;
    if (rel[r] != Relation::less_equal) ++artificials;
  }

  const std::size_t total = structural + slacks + artificials;
  const std::size_t first_artificial = structural + slacks;
  Tableau t(m, total);
  std::vector<std::size_t> basis(m);
  std::size_t next_slack = structural, next_art = first_artificial;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = sign[r] * lp.rows[r].coefficients[j];
      t.at(r, column_of[j]) = a;
      if (is_free[j]) t.at(r, column_of[j] + 1) = -a;
    }
    t.rhs(r) = rhs[r];
    if (rel[r] == Relation::less_equal) {
      t.at(r, next_slack) = 1.0;
      basis[r] = next_slack++;
    } else {
      if (rel[r] == Relation::greater_equal) t.at(r, next_slack++) = -1.0;
      t.at(r, next_art) = 1.0;
      basis[r] = next_art++;
    }
  }

  // Phase 1: minimise the sum of artificials.
  std::vector<double> cost(total + 1, 0.0);
  if (artificials > 0) {
    for (std::size_t c = first_artificial; c < total; ++c) cost[c] = 1.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (basis[r] < first_artificial) continue;
      for (std::size_t c = 0; c <= total; ++c) cost[c] -= t.at(r, c);
    }
    iterate(t, cost, basis, total);
    double scale = 1.0;
    for (double b : rhs) scale = std::max(scale, std::abs(b));
    if (-cost[total] > 1e-9 * scale) return LpResult{LpStatus::infeasible, 0.0, {}};
    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t r = 0; r < t.rows();) {
      if (basis[r] < first_artificial) { ++r; continue; }
      std::size_t pc = first_artificial;
      for (std::size_t c = 0; c < first_artificial; ++c) {
        if (std::abs(t.at(r, c)) > kPivotTol) { pc = c; break; }
      }
      if (pc == first_artificial) {
        t.erase_row(r);
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      t.pivot(r, pc, cost);
      basis[r] = pc;
      ++r;
    }
  }

  // Phase 2 on the original objective, artificial columns frozen out.
  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[column_of[j]] = lp.objective[j];
    if (is_free[j]) cost[column_of[j] + 1] = -lp.objective[j];
  }
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const double cb = cost[basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= total; ++c) cost[c] -= cb * t.at(r, c);
  }
  if (iterate(t, cost, basis, first_artificial) == Outcome::unbounded) {
    return LpResult{LpStatus::unbounded, 0.0, {}};
  }

  std::vector<double> values(total, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) values[basis[r]] = t.rhs(r);
  LpResult result;
  result.status = LpStatus::optimal;
  result.x.resize(n);
  double z = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double v = values[column_of[j]];
    if (is_free[j]) v -= values[column_of[j] + 1];
    else v += lb[j];
    result.x[j] = v;
    z += lp.objective[j] * v;
  }
  result.value = z;
  return result;
}

}  // namespace marketsim
