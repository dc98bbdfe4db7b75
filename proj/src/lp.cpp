// Copyright 2026 The auction-synth Authors
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

#include "auctions/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "auctions/errors.hpp"

namespace auctions::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr double kReducedCostTol = 1e-9;

// One structural variable of the standard form, mapping back to an input
// variable via x = shift + sign * u  (or x = u_plus - u_minus when free).
struct VarMap {
  enum class Kind { Shifted, Mirrored, Free } kind = Kind::Shifted;
  int col_a = -1;
  int col_b = -1;  // Free only
  double shift = 0.0;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double rhs(int r) const { return at(r, cols_); }
  // Row `rows_` is the objective row (reduced costs; rhs holds -z).
  int obj_row() const { return rows_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int pr, int pc) {
    const double piv = at(pr, pc);
    const double inv = 1.0 / piv;
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

struct StandardForm {
  Tableau tab;
  std::vector<int> basis;         // basic column per row
  std::vector<bool> artificial;   // per column
  std::vector<int> identity_col;  // designated identity column per row
  std::vector<double> row_sign;   // +-1 applied during rhs normalization
  std::vector<double> rhs_normalized;
  int n_user_rows = 0;
};

enum class PivotOutcome { Optimal, Unbounded, IterationLimit };

// Minimize the objective currently installed in the tableau's objective row.
PivotOutcome run_simplex(Tableau& tab, std::vector<int>& basis, const std::vector<bool>& blocked) {
  const int m = tab.rows();
  const int n = tab.cols();
  const long max_iters = 5000 + 60L * (m + n);
  bool bland = false;
  double last_obj = -tab.rhs(tab.obj_row());
  long stall = 0;
  const long stall_limit = 4L * (m + n) + 64;

  for (long iter = 0; iter < max_iters; ++iter) {
    int enter = -1;
    if (bland) {
      for (int c = 0; c < n; ++c) {
        if (!blocked[c] && tab.at(tab.obj_row(), c) < -kReducedCostTol) {
          enter = c;
          break;
        }
      }
    } else {
      double best = -kReducedCostTol;
      for (int c = 0; c < n; ++c) {
        const double rc = tab.at(tab.obj_row(), c);
        if (!blocked[c] && rc < best) {
          best = rc;
          enter = c;
        }
      }
    }
    if (enter < 0) return PivotOutcome::Optimal;

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      const double a = tab.at(r, enter);
      if (a > kPivotTol) {
        const double ratio = tab.rhs(r) / a;
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return PivotOutcome::Unbounded;

    tab.pivot(leave, enter);
    basis[leave] = enter;

    const double obj = -tab.rhs(tab.obj_row());
    if (obj < last_obj - 1e-12) {
      last_obj = obj;
      stall = 0;
      bland = false;
    } else if (++stall > stall_limit) {
      bland = true;  // anti-cycling fallback on long degenerate stretches
    }
  }
  return PivotOutcome::IterationLimit;
}

void install_objective(Tableau& tab, const std::vector<int>& basis,
                       const std::vector<double>& cost) {
  const int obj = tab.obj_row();
  for (int c = 0; c < tab.cols(); ++c) tab.at(obj, c) = cost[c];
  tab.rhs(obj) = 0.0;
  for (int r = 0; r < tab.rows(); ++r) {
    const double cb = cost[basis[r]];
    if (cb == 0.0) continue;
    for (int c = 0; c <= tab.cols(); ++c) tab.at(obj, c) -= cb * tab.at(r, c);
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars();
  if (static_cast<int>(lp.lower.size()) != n || static_cast<int>(lp.upper.size()) != n) {
    throw DimensionMismatch("variable bound vectors must match the objective dimension");
  }
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coeffs.size()) != n) {
      throw DimensionMismatch("row dimension does not match the objective dimension");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (lp.lower[j] > lp.upper[j]) {
      return {LpStatus::Infeasible, {}, 0.0, {}, 0.0};
    }
  }

  // Map variables to non-negative structural columns.
  std::vector<VarMap> vmap(n);
  int n_struct = 0;
  struct BoundRow {
    int col;
    double cap;
  };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (lo > -kInf) {
      vmap[j] = {VarMap::Kind::Shifted, n_struct++, -1, lo};
      if (hi < kInf) bound_rows.push_back({vmap[j].col_a, hi - lo});
    } else if (hi < kInf) {
      vmap[j] = {VarMap::Kind::Mirrored, n_struct++, -1, hi};
    } else {
      vmap[j] = {VarMap::Kind::Free, n_struct, n_struct + 1, 0.0};
      n_struct += 2;
    }
  }

  auto column_expand = [&](const std::vector<double>& coeffs, std::vector<double>& out,
                           double& rhs_shift) {
    for (int j = 0; j < n; ++j) {
      const double a = coeffs[j];
      if (a == 0.0) continue;
      switch (vmap[j].kind) {
        case VarMap::Kind::Shifted:
          out[vmap[j].col_a] += a;
          rhs_shift += a * vmap[j].shift;
          break;
        case VarMap::Kind::Mirrored:
          out[vmap[j].col_a] -= a;
          rhs_shift += a * vmap[j].shift;
          break;
        case VarMap::Kind::Free:
          out[vmap[j].col_a] += a;
          out[vmap[j].col_b] -= a;
          break;
      }
    }
  };

  const int n_user_rows = static_cast<int>(lp.rows.size());
  const int m = n_user_rows + static_cast<int>(bound_rows.size());

  // Expanded rows over structural columns.
  std::vector<std::vector<double>> A(m, std::vector<double>(n_struct, 0.0));
  std::vector<double> b(m, 0.0);
  std::vector<Relation> rel(m, Relation::LessEq);
  for (int k = 0; k < n_user_rows; ++k) {
    double shift = 0.0;
    column_expand(lp.rows[k].coeffs, A[k], shift);
    b[k] = lp.rows[k].rhs - shift;
    rel[k] = lp.rows[k].rel;
  }
  for (std::size_t k = 0; k < bound_rows.size(); ++k) {
    const int r = n_user_rows + static_cast<int>(k);
    A[r][bound_rows[k].col] = 1.0;
    b[r] = bound_rows[k].cap;
    rel[r] = Relation::LessEq;
  }

  // Slack columns, rhs normalization, artificials.
  int n_cols = n_struct;
  std::vector<int> slack_col(m, -1);
  for (int r = 0; r < m; ++r) {
    if (rel[r] != Relation::Equal) slack_col[r] = n_cols++;
  }
  std::vector<double> row_sign(m, 1.0);
  for (int r = 0; r < m; ++r) {
    if (b[r] < 0.0) {
      row_sign[r] = -1.0;
      for (double& a : A[r]) a = -a;
      b[r] = -b[r];
    }
  }
  std::vector<int> identity_col(m, -1);
  std::vector<int> art_col(m, -1);
  for (int r = 0; r < m; ++r) {
    const double s = (rel[r] == Relation::LessEq ? 1.0 : -1.0) * row_sign[r];
    if (rel[r] != Relation::Equal && s > 0.0) {
      identity_col[r] = slack_col[r];
    } else {
      art_col[r] = n_cols++;
      identity_col[r] = art_col[r];
    }
  }

  Tableau tab(m, n_cols);
  std::vector<bool> artificial(n_cols, false);
  std::vector<int> basis(m, -1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n_struct; ++c) tab.at(r, c) = A[r][c];
    if (slack_col[r] >= 0) {
      tab.at(r, slack_col[r]) = (rel[r] == Relation::LessEq ? 1.0 : -1.0) * row_sign[r];
    }
    if (art_col[r] >= 0) {
      tab.at(r, art_col[r]) = 1.0;
      artificial[art_col[r]] = true;
    }
    tab.rhs(r) = b[r];
    basis[r] = identity_col[r];
  }

  // Phase 1: drive the artificials to zero.
  bool need_phase1 = false;
  for (int r = 0; r < m; ++r) need_phase1 |= art_col[r] >= 0;
  std::vector<bool> blocked(n_cols, false);
  if (need_phase1) {
    std::vector<double> phase1_cost(n_cols, 0.0);
    for (int c = 0; c < n_cols; ++c) {
      if (artificial[c]) phase1_cost[c] = 1.0;
    }
    install_objective(tab, basis, phase1_cost);
    const PivotOutcome out = run_simplex(tab, basis, blocked);
    if (out == PivotOutcome::IterationLimit) {
      throw OracleFailure("simplex iteration limit reached in phase 1");
    }
    const double infeas = -tab.rhs(tab.obj_row());
    if (infeas > kFeasTol) {
      return {LpStatus::Infeasible, {}, 0.0, {}, 0.0};
    }
    // Pivot remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (!artificial[basis[r]]) continue;
      int enter = -1;
      for (int c = 0; c < n_cols; ++c) {
        if (!artificial[c] && std::abs(tab.at(r, c)) > kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter >= 0) {
        tab.pivot(r, enter);
        basis[r] = enter;
      }
    }
  }
  for (int c = 0; c < n_cols; ++c) {
    if (artificial[c]) blocked[c] = true;
  }

  // Phase 2 with the real objective (internally minimized).
  const double sense_factor = lp.sense == Sense::Maximize ? -1.0 : 1.0;
  double const_obj = 0.0;
  std::vector<double> cost(n_cols, 0.0);
  for (int j = 0; j < n; ++j) {
    const double d = lp.objective[j];
    if (d == 0.0) continue;
    const_obj += d * vmap[j].shift;
    switch (vmap[j].kind) {
      case VarMap::Kind::Shifted:
        cost[vmap[j].col_a] += sense_factor * d;
        break;
      case VarMap::Kind::Mirrored:
        cost[vmap[j].col_a] -= sense_factor * d;
        break;
      case VarMap::Kind::Free:
        cost[vmap[j].col_a] += sense_factor * d;
        cost[vmap[j].col_b] -= sense_factor * d;
        break;
    }
  }
  install_objective(tab, basis, cost);
  const PivotOutcome out = run_simplex(tab, basis, blocked);
  if (out == PivotOutcome::IterationLimit) {
    throw OracleFailure("simplex iteration limit reached in phase 2");
  }
  if (out == PivotOutcome::Unbounded) {
    return {LpStatus::Unbounded, {}, 0.0, {}, 0.0};
  }

  // Recover the solution in user coordinates.
  std::vector<double> u(n_cols, 0.0);
  for (int r = 0; r < m; ++r) u[basis[r]] = tab.rhs(r);
  std::vector<double> x(n, 0.0);
  for (int j = 0; j < n; ++j) {
    switch (vmap[j].kind) {
      case VarMap::Kind::Shifted:
        x[j] = vmap[j].shift + u[vmap[j].col_a];
        break;
      case VarMap::Kind::Mirrored:
        x[j] = vmap[j].shift - u[vmap[j].col_a];
        break;
      case VarMap::Kind::Free:
        x[j] = u[vmap[j].col_a] - u[vmap[j].col_b];
        break;
    }
  }
  const double z_min = -tab.rhs(tab.obj_row());
  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.values = std::move(x);
  sol.objective_value = const_obj + (lp.sense == Sense::Maximize ? -z_min : z_min);

  // Duals from the reduced costs of each row's designated identity column.
  std::vector<double> y_norm(m, 0.0);
  double dual_dot = 0.0;
  for (int r = 0; r < m; ++r) {
    const int c = identity_col[r];
    const double cost_c = cost[c];  // 0 for slacks and artificials
    y_norm[r] = cost_c - tab.at(tab.obj_row(), c);
    dual_dot += y_norm[r] * b[r];
  }
  sol.dual_objective = const_obj + (lp.sense == Sense::Maximize ? -dual_dot : dual_dot);
  sol.row_duals.assign(n_user_rows, 0.0);
  for (int r = 0; r < n_user_rows; ++r) {
    const double y_min = row_sign[r] * y_norm[r];
    sol.row_duals[r] = lp.sense == Sense::Maximize ? -y_min : y_min;
  }
  return sol;
}

FeasibilityResult check_feasible_lp(const std::vector<LpRow>& rows,
                                    const std::vector<double>& lower,
                                    const std::vector<double>& upper) {
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  lp.objective.assign(lower.size(), 0.0);
  lp.rows = rows;
  lp.lower = lower;
  lp.upper = upper;
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return {false, {}};
  return {true, sol.values};
}

}  // namespace auctions::lp
