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

#include "auctions/lp_exp.hpp"

#include <array>
#include <map>

#include "auctions/errors.hpp"

namespace auctions::lpexp {

namespace {

// Reverse lookup from cell coordinates to flat variable indices; built once
// per row construction, sizes are tiny.
struct CellIndex {
  std::map<std::array<int, 4>, int> x;
  std::map<std::array<int, 3>, int> p;
  std::map<std::array<int, 2>, int> extra;

  explicit CellIndex(const Instance& inst, const CellLayout& layout) {
    for (int c = 0; c < layout.x_count(); ++c) {
      const XCell& cell = layout.x_cells[c];
      x[{cell.i, cell.t, cell.t2, cell.sub}] = c;
    }
    for (int c = 0; c < layout.p_count(); ++c) {
      const PCell& cell = layout.p_cells[c];
      p[{cell.i, cell.t, cell.t2}] = layout.x_count() + c;
    }
    if (layout.extra_payment_vars > 0) {
      int next = layout.x_count() + layout.p_count();
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) extra[{i, t}] = next++;
      }
    }
  }

  int x_at(int i, int t, int t2, int sub) const { return x.at({i, t, t2, sub}); }
  int p_at(int i, int t, int t2 = -1) const { return p.at({i, t, t2}); }
  int pay(const CellLayout& layout, int i, int t) const {
    return layout.extra_payment_vars > 0 ? extra.at({i, t}) : p.at({i, t, -1});
  }
};

bool misreport_allowed(const Instance& inst, int i, int true_type, int reported) {
  if (!inst.private_budgets()) return true;
  return inst.budgets->resolve(i, true_type) >= inst.budgets->resolve(i, reported);
}

}  // namespace

std::vector<HolisticRow> bic_rows(const Instance& inst, const CellLayout& layout) {
  const CellIndex idx(inst, layout);
  std::vector<HolisticRow> rows;
  for (int i = 0; i < inst.n; ++i) {
    const int tn = inst.types_of(i);
    for (int t = 0; t < tn; ++t) {
      for (int r = 0; r < tn; ++r) {
        if (r == t || !misreport_allowed(inst, i, t, r)) continue;
        HolisticRow row;
        row.rel = lp::Relation::GreaterEq;
        row.rhs = 0.0;
        switch (inst.setting) {
          case Setting::MultiUnit:
            if (layout.correlated) {
              for (int q = 0; q <= inst.m; ++q) {
                const double v = inst.unit_values[i][t][q];
                if (v != 0.0) {
                  row.terms.push_back({idx.x_at(i, t, t, q), v});
                  row.terms.push_back({idx.x_at(i, t, r, q), -v});
                }
              }
              row.terms.push_back({idx.p_at(i, t, t), -1.0});
              row.terms.push_back({idx.p_at(i, t, r), 1.0});
            } else {
              for (int q = 0; q <= inst.m; ++q) {
                const double v = inst.unit_values[i][t][q];
                if (v != 0.0) {
                  row.terms.push_back({idx.x_at(i, t, -1, q), v});
                  row.terms.push_back({idx.x_at(i, r, -1, q), -v});
                }
              }
              row.terms.push_back({idx.p_at(i, t), -1.0});
              row.terms.push_back({idx.p_at(i, r), 1.0});
            }
            break;
          case Setting::QuittingRights:
          case Setting::SoftBudget:
            row.terms.push_back({idx.x_at(i, t, t, -1), 1.0});
            row.terms.push_back({idx.x_at(i, r, t, -1), -1.0});
            break;
          case Setting::SellerUtility:
            for (int pi = 0; pi < inst.payment_levels(); ++pi) {
              for (int q = 0; q <= inst.m; ++q) {
                const double u = inst.buyer_utility[i][t][pi][q];
                if (u != 0.0) {
                  row.terms.push_back({idx.x_at(i, t, -1, pi * (inst.m + 1) + q), u});
                  row.terms.push_back({idx.x_at(i, r, -1, pi * (inst.m + 1) + q), -u});
                }
              }
            }
            break;
          case Setting::MultiItem:
            for (int j = 0; j < inst.m; ++j) {
              const double v = inst.item_values[i][t][j];
              if (v != 0.0) {
                row.terms.push_back({idx.x_at(i, t, -1, j), v});
                row.terms.push_back({idx.x_at(i, r, -1, j), -v});
              }
            }
            row.terms.push_back({idx.pay(layout, i, t), -1.0});
            row.terms.push_back({idx.pay(layout, i, r), 1.0});
            break;
          case Setting::Procurement: {
            const double c = inst.procurement->costs[i][t];
            row.terms.push_back({idx.p_at(i, t), 1.0});
            row.terms.push_back({idx.x_at(i, t, -1, -1), -c});
            row.terms.push_back({idx.p_at(i, r), -1.0});
            row.terms.push_back({idx.x_at(i, r, -1, -1), c});
            break;
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::optional<HolisticRow> revenue_row(const Instance& inst, const CellLayout& layout,
                                       double target) {
  if (layout.has_value_row) return std::nullopt;  // objective row lives on samples
  const CellIndex idx(inst, layout);
  HolisticRow row;
  row.rel = lp::Relation::GreaterEq;
  row.rhs = target;
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.types_of(i); ++t) {
      const double f = inst.prior.marginal(i, t);
      if (layout.correlated) {
        row.terms.push_back({idx.p_at(i, t, t), f});
      } else {
        row.terms.push_back({idx.pay(layout, i, t), f});
      }
    }
  }
  return row;
}

std::vector<HolisticRow> structural_rows(const Instance& inst, const CellLayout& layout) {
  const CellIndex idx(inst, layout);
  std::vector<HolisticRow> rows;
  switch (inst.setting) {
    case Setting::MultiUnit:
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          if (layout.correlated) {
            for (int r = 0; r < inst.types_of(i); ++r) {
              HolisticRow row{{}, lp::Relation::Equal, 1.0};
              for (int q = 0; q <= inst.m; ++q) row.terms.push_back({idx.x_at(i, t, r, q), 1.0});
              rows.push_back(std::move(row));
            }
          } else {
            HolisticRow row{{}, lp::Relation::Equal, 1.0};
            for (int q = 0; q <= inst.m; ++q) row.terms.push_back({idx.x_at(i, t, -1, q), 1.0});
            rows.push_back(std::move(row));
          }
        }
      }
      break;
    case Setting::SellerUtility:
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          HolisticRow row{{}, lp::Relation::Equal, 1.0};
          for (int pi = 0; pi < inst.payment_levels(); ++pi) {
            for (int q = 0; q <= inst.m; ++q) {
              row.terms.push_back({idx.x_at(i, t, -1, pi * (inst.m + 1) + q), 1.0});
            }
          }
          rows.push_back(std::move(row));
        }
      }
      break;
    case Setting::MultiItem:
      if (layout.inequality) {
        // Ex-interim IR: expected welfare covers the all-pay payment.
        for (int i = 0; i < inst.n; ++i) {
          for (int t = 0; t < inst.types_of(i); ++t) {
            HolisticRow row{{}, lp::Relation::GreaterEq, 0.0};
            for (int j = 0; j < inst.m; ++j) {
              row.terms.push_back({idx.x_at(i, t, -1, j), inst.item_values[i][t][j]});
            }
            row.terms.push_back({idx.pay(layout, i, t), -1.0});
            rows.push_back(std::move(row));
          }
        }
      }
      break;
    case Setting::QuittingRights:
    case Setting::SoftBudget:
    case Setting::Procurement:
      break;
  }
  return rows;
}

void holistic_bounds(const Instance& inst, const CellLayout& layout, std::vector<double>& lower,
                     std::vector<double>& upper) {
  lower.assign(layout.var_count(), 0.0);
  upper.assign(layout.var_count(), lp::kInf);
  const bool simplex_covers =
      inst.setting == Setting::MultiUnit || inst.setting == Setting::SellerUtility;
  for (int c = 0; c < layout.x_count(); ++c) {
    const CellBox box = x_cell_box(inst, layout, layout.x_cells[c]);
    lower[c] = box.lo;
    upper[c] = simplex_covers ? lp::kInf : box.hi;
  }
  for (int c = 0; c < layout.p_count(); ++c) {
    const CellBox box = p_cell_box(inst, layout, layout.p_cells[c]);
    lower[layout.x_count() + c] = box.lo;
    upper[layout.x_count() + c] = box.hi;
  }
  if (layout.extra_payment_vars > 0) {
    int next = layout.x_count() + layout.p_count();
    for (int i = 0; i < inst.n; ++i) {
      for (int t = 0; t < inst.types_of(i); ++t) {
        lower[next] = 0.0;
        upper[next] = inst.budget_cap(i, t);
        ++next;
      }
    }
  }
}

LpExpResult solve_lp_exp(const Instance& inst, const CellLayout& layout,
                         const DualSnapshot& duals, double target) {
  lp::LinearProgram prog;
  prog.sense = lp::Sense::Minimize;
  prog.objective.assign(layout.var_count(), 0.0);
  for (int v = 0; v < layout.var_count(); ++v) {
    prog.objective[v] = cell_marginal(inst, layout, v) * dual_get(duals, layout, v);
  }
  holistic_bounds(inst, layout, prog.lower, prog.upper);

  auto add = [&prog, &layout](const HolisticRow& row) {
    std::vector<double> coeffs(layout.var_count(), 0.0);
    for (const auto& term : row.terms) coeffs[term.var] += term.coeff;
    prog.add_row(std::move(coeffs), row.rel, row.rhs);
  };
  for (const auto& row : bic_rows(inst, layout)) add(row);
  if (auto rev = revenue_row(inst, layout, target)) add(*rev);
  for (const auto& row : structural_rows(inst, layout)) add(row);

  const lp::LpSolution sol = lp::solve_lp(prog);
  if (sol.status == lp::LpStatus::Infeasible) return {false, {}, 0.0};
  if (sol.status != lp::LpStatus::Optimal) {
    throw OracleFailure("holistic LP unbounded: missing box bound");
  }
  LpExpResult out;
  out.feasible = true;
  out.solution = make_holistic(inst);
  for (int v = 0; v < layout.var_count(); ++v) {
    holistic_set(out.solution, layout, v, sol.values[v]);
  }
  out.objective = sol.objective_value;
  return out;
}

}  // namespace auctions::lpexp
