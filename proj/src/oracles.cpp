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

#include "auctions/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "auctions/errors.hpp"

namespace auctions::oracles {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// -------------------------------------------------------------------------
// Shared quantity-allocation DP for the multi-unit family.
//
// gains[i][q] is the best objective contribution of buyer i receiving q
// items (payment already optimized per (i, q)). Processes buyers from the
// last to the first; reconstruction prefers the lowest quantity on ties.
std::vector<int> allocate_quantities(int n, int m, const std::vector<std::vector<double>>& gains) {
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(m + 1, 0.0));
  std::vector<std::vector<int>> choice(n, std::vector<int>(m + 1, 0));
  for (int i = n - 1; i >= 0; --i) {
    for (int k = 0; k <= m; ++k) {
      double b = kNegInf;
      int arg = 0;
      for (int q = 0; q <= k; ++q) {
        const double v = gains[i][q] + best[i + 1][k - q];
        if (v > b) {
          b = v;
          arg = q;
        }
      }
      best[i][k] = b;
      choice[i][k] = arg;
    }
  }
  std::vector<int> out(n, 0);
  int k = m;
  for (int i = 0; i < n; ++i) {
    out[i] = choice[i][k];
    k -= out[i];
  }
  return out;
}

// Correlated mode folds the stored (reported-type) multipliers with the
// realization's z-ratios into plain per-(i, q) weights.
void effective_correlated_duals(const Instance& inst, const DualSnapshot& duals,
                                const TypeVector& t, std::vector<std::vector<double>>& alpha,
                                std::vector<double>& beta) {
  alpha.assign(inst.n, std::vector<double>(inst.m + 1, 0.0));
  beta.assign(inst.n, 0.0);
  for (int i = 0; i < inst.n; ++i) {
    const int rep = t[i];
    for (int tt = 0; tt < inst.types_of(i); ++tt) {
      const double z = conditional_ratio(inst.prior, i, tt, rep, t);
      if (z == 0.0) continue;
      for (int q = 0; q <= inst.m; ++q) alpha[i][q] += duals.alpha4[i][tt][rep][q] * z;
      beta[i] += duals.beta3[i][tt][rep] * z;
    }
  }
}

double quitting_score(const Instance& inst, const DualSnapshot& duals, int i, int rep, int q,
                      double p) {
  double s = 0.0;
  for (int tt = 0; tt < inst.types_of(i); ++tt) {
    s += duals.alpha3[i][rep][tt] * std::max(inst.unit_values[i][tt][q] - p, 0.0);
  }
  return s + duals.beta2[i][rep] * p;
}

double soft_score(const Instance& inst, const DualSnapshot& duals, int i, int rep, int q,
                  double p) {
  const double cost = inst.soft_costs[i].value(p);
  double s = 0.0;
  for (int tt = 0; tt < inst.types_of(i); ++tt) {
    s += duals.alpha3[i][rep][tt] * (inst.unit_values[i][tt][q] - cost);
  }
  return s + duals.beta2[i][rep] * p;
}

}  // namespace

double dual_objective(const Instance& inst, const DualSnapshot& duals, const TypeVector& t,
                      const Outcome& out) {
  double acc = 0.0;
  switch (inst.setting) {
    case Setting::MultiUnit:
      if (inst.correlated()) {
        for (int i = 0; i < inst.n; ++i) {
          const int rep = t[i];
          for (int tt = 0; tt < inst.types_of(i); ++tt) {
            const double z = conditional_ratio(inst.prior, i, tt, rep, t);
            if (z == 0.0) continue;
            acc += duals.alpha4[i][tt][rep][out.quantities[i]] * z;
            acc += duals.beta3[i][tt][rep] * z * out.payments[i];
          }
        }
      } else {
        for (int i = 0; i < inst.n; ++i) {
          acc += duals.alpha3[i][t[i]][out.quantities[i]] + duals.beta2[i][t[i]] * out.payments[i];
        }
      }
      return acc;
    case Setting::QuittingRights:
      for (int i = 0; i < inst.n; ++i) {
        acc += quitting_score(inst, duals, i, t[i], out.quantities[i], out.payments[i]);
      }
      return acc;
    case Setting::SoftBudget:
      for (int i = 0; i < inst.n; ++i) {
        acc += soft_score(inst, duals, i, t[i], out.quantities[i], out.payments[i]);
      }
      return acc;
    case Setting::SellerUtility: {
      double revenue = 0.0;
      for (int i = 0; i < inst.n; ++i) {
        acc += duals.alpha4[i][t[i]][inst.index_of_payment(static_cast<int>(out.payments[i]))]
                          [out.quantities[i]];
        revenue += out.payments[i];
      }
      return acc + duals.gamma * inst.seller_utility->at(revenue);
    }
    case Setting::MultiItem:
      for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.m; ++j) {
          acc += duals.alpha3[i][t[i]][j] * out.fractions[i][j];
        }
        if (!duals.beta2.empty()) acc += duals.beta2[i][t[i]] * out.payments[i];
      }
      return acc;
    case Setting::Procurement:
      for (int i = 0; i < inst.n; ++i) {
        if (out.procured[i]) {
          acc += duals.alpha2[i][t[i]] + duals.gamma * inst.procurement->item_values[i];
        }
        acc += duals.beta2[i][t[i]] * out.payments[i];
      }
      return acc;
  }
  return acc;
}

OracleOutput oracle_multi_unit(const DualSnapshot& duals, const TypeVector& t,
                               const Instance& inst) {
  std::vector<std::vector<double>> alpha;
  std::vector<double> beta;
  if (inst.correlated()) {
    effective_correlated_duals(inst, duals, t, alpha, beta);
  } else {
    alpha.assign(inst.n, {});
    beta.assign(inst.n, 0.0);
    for (int i = 0; i < inst.n; ++i) {
      alpha[i] = duals.alpha3[i][t[i]];
      beta[i] = duals.beta2[i][t[i]];
    }
  }

  // Optimal payment per (i, q): zero when the payment multiplier is not
  // positive, otherwise the IR/budget cap min(B_i, v_i(q, t_i)).
  std::vector<std::vector<double>> gains(inst.n, std::vector<double>(inst.m + 1, 0.0));
  std::vector<std::vector<double>> pay(inst.n, std::vector<double>(inst.m + 1, 0.0));
  for (int i = 0; i < inst.n; ++i) {
    const double budget = inst.budget_cap(i, t[i]);
    for (int q = 0; q <= inst.m; ++q) {
      const double cap = std::min(budget, inst.unit_values[i][t[i]][q]);
      if (beta[i] > 0.0) {
        pay[i][q] = cap;
        gains[i][q] = alpha[i][q] + beta[i] * cap;
      } else {
        pay[i][q] = 0.0;
        gains[i][q] = alpha[i][q];
      }
    }
  }

  Outcome out = make_outcome(inst);
  out.quantities = allocate_quantities(inst.n, inst.m, gains);
  for (int i = 0; i < inst.n; ++i) out.payments[i] = pay[i][out.quantities[i]];
  return {out, dual_objective(inst, duals, t, out)};
}

std::vector<double> quitting_payment_candidates(const Instance& inst, int i, int reported,
                                                int q) {
  const double cap = std::min(inst.budget_cap(i, reported), inst.unit_values[i][reported][q]);
  std::vector<double> cands;
  cands.push_back(0.0);
  if (inst.budgets.has_value()) cands.push_back(inst.budgets->resolve(i, reported));
  for (int tt = 0; tt < inst.types_of(i); ++tt) {
    cands.push_back(inst.unit_values[i][tt][q]);
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::erase_if(cands, [cap](double p) { return p < 0.0 || p > cap; });
  if (cands.empty() || cands.back() < cap) cands.push_back(cap);
  return cands;
}

std::vector<double> soft_payment_candidates(const Instance& inst, int i, int reported, int q) {
  const double cap = inst.soft_costs[i].inverse(inst.unit_values[i][reported][q]);
  std::vector<double> cands;
  cands.push_back(0.0);
  for (double bp : inst.soft_costs[i].breakpoints) {
    if (bp > 0.0 && bp < cap) cands.push_back(bp);
  }
  cands.push_back(cap);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

OracleOutput oracle_quitting_rights(const DualSnapshot& duals, const TypeVector& t,
                                    const Instance& inst) {
  std::vector<std::vector<double>> gains(inst.n, std::vector<double>(inst.m + 1, 0.0));
  std::vector<std::vector<double>> pay(inst.n, std::vector<double>(inst.m + 1, 0.0));
  for (int i = 0; i < inst.n; ++i) {
    for (int q = 0; q <= inst.m; ++q) {
      double best = kNegInf;
      double best_p = 0.0;
      for (double p : quitting_payment_candidates(inst, i, t[i], q)) {
        const double s = quitting_score(inst, duals, i, t[i], q, p);
        if (s > best) {
          best = s;
          best_p = p;
        }
      }
      gains[i][q] = best;
      pay[i][q] = best_p;
    }
  }
  Outcome out = make_outcome(inst);
  out.quantities = allocate_quantities(inst.n, inst.m, gains);
  for (int i = 0; i < inst.n; ++i) out.payments[i] = pay[i][out.quantities[i]];
  return {out, dual_objective(inst, duals, t, out)};
}

OracleOutput oracle_soft_budget(const DualSnapshot& duals, const TypeVector& t,
                                const Instance& inst) {
  std::vector<std::vector<double>> gains(inst.n, std::vector<double>(inst.m + 1, 0.0));
  std::vector<std::vector<double>> pay(inst.n, std::vector<double>(inst.m + 1, 0.0));
  for (int i = 0; i < inst.n; ++i) {
    for (int q = 0; q <= inst.m; ++q) {
      double best = kNegInf;
      double best_p = 0.0;
      for (double p : soft_payment_candidates(inst, i, t[i], q)) {
        const double s = soft_score(inst, duals, i, t[i], q, p);
        if (s > best) {
          best = s;
          best_p = p;
        }
      }
      gains[i][q] = best;
      pay[i][q] = best_p;
    }
  }
  Outcome out = make_outcome(inst);
  out.quantities = allocate_quantities(inst.n, inst.m, gains);
  for (int i = 0; i < inst.n; ++i) out.payments[i] = pay[i][out.quantities[i]];
  return {out, dual_objective(inst, duals, t, out)};
}

OracleOutput oracle_seller_utility(const DualSnapshot& duals, const TypeVector& t,
                                   const Instance& inst) {
  if (duals.gamma < 0.0) throw NegativeDual("seller-utility row multiplier must be >= 0");
  const int L = static_cast<int>(inst.scale_int());
  const int z_states = 2 * inst.n * L + 1;
  const int z_off = inst.n * L;
  const auto& U = *inst.seller_utility;

  // A[i][k][z]: best objective over buyers i..n-1 with k items already
  // allocated and accumulated revenue z; the utility term telescopes.
  std::vector<std::vector<std::vector<double>>> best(
      inst.n + 1,
      std::vector<std::vector<double>>(inst.m + 1, std::vector<double>(z_states, 0.0)));
  std::vector<std::vector<std::vector<std::pair<int, int>>>> choice(
      inst.n, std::vector<std::vector<std::pair<int, int>>>(
                  inst.m + 1, std::vector<std::pair<int, int>>(z_states, {0, 0})));

  // Canonical payment order: 0, 1, -1, 2, -2, ... so zero-dual ties land on
  // (p, q) = (0, 0).
  std::vector<int> p_order;
  p_order.push_back(0);
  for (int d = 1; d <= L; ++d) {
    p_order.push_back(d);
    p_order.push_back(-d);
  }

  for (int i = inst.n - 1; i >= 0; --i) {
    const int rep = t[i];
    for (int k = 0; k <= inst.m; ++k) {
      for (int z = 0; z < z_states; ++z) {
        const double z_rev = static_cast<double>(z - z_off);
        double b = kNegInf;
        std::pair<int, int> arg{0, 0};
        for (int q = 0; q + k <= inst.m; ++q) {
          for (int p : p_order) {
            if (inst.buyer_utility_at(i, rep, p, q) < 0.0) continue;
            const double step = duals.gamma * (U.at(z_rev + p) - U.at(z_rev)) +
                                duals.alpha4[i][rep][inst.index_of_payment(p)][q];
            const double v = step + best[i + 1][k + q][z + p];
            if (v > b) {
              b = v;
              arg = {p, q};
            }
          }
        }
        if (b == kNegInf) {
          throw OracleFailure("no feasible (p, q) pair for buyer " + std::to_string(i));
        }
        best[i][k][z] = b;
        choice[i][k][z] = arg;
      }
    }
  }

  Outcome out = make_outcome(inst);
  int k = 0;
  int z = z_off;
  for (int i = 0; i < inst.n; ++i) {
    const auto [p, q] = choice[i][k][z];
    out.payments[i] = p;
    out.quantities[i] = q;
    k += q;
    z += p;
  }
  return {out, dual_objective(inst, duals, t, out)};
}

namespace {

// 0/1 knapsack over agent indices with integer sizes; maximizes the sum of
// (possibly negative) profits. Ties prefer excluding, so reconstruction is
// deterministic. Returns the chosen set.
std::vector<int> knapsack_max(const std::vector<int>& agents, const std::vector<int>& sizes,
                              const std::vector<double>& profits, int capacity, double* value) {
  const int n = static_cast<int>(agents.size());
  std::vector<std::vector<double>> dp(n + 1, std::vector<double>(capacity + 1, 0.0));
  for (int j = n - 1; j >= 0; --j) {
    for (int w = 0; w <= capacity; ++w) {
      double b = dp[j + 1][w];
      if (sizes[j] <= w) {
        const double inc = profits[j] + dp[j + 1][w - sizes[j]];
        if (inc > b) b = inc;
      }
      dp[j][w] = b;
    }
  }
  std::vector<int> chosen;
  int w = capacity;
  for (int j = 0; j < n; ++j) {
    if (sizes[j] <= w && profits[j] + dp[j + 1][w - sizes[j]] > dp[j + 1][w]) {
      chosen.push_back(agents[j]);
      w -= sizes[j];
    }
  }
  if (value != nullptr) *value = dp[0][capacity];
  return chosen;
}

}  // namespace

OracleOutput oracle_procurement(const DualSnapshot& duals, const TypeVector& t,
                                const Instance& inst) {
  if (duals.gamma < 0.0) throw NegativeDual("procurement value-row multiplier must be >= 0");
  const auto& spec = *inst.procurement;
  const int budget = static_cast<int>(std::lround(spec.budget));
  std::vector<int> cost(inst.n);
  for (int i = 0; i < inst.n; ++i) cost[i] = static_cast<int>(std::lround(spec.costs[i][t[i]]));

  Outcome best_out = make_outcome(inst);
  double best_val = kNegInf;
  auto consider = [&](const std::vector<int>& procured, int winner) {
    Outcome out = make_outcome(inst);
    int spent = 0;
    for (int j : procured) {
      out.procured[j] = 1;
      out.payments[j] = cost[j];
      spent += cost[j];
    }
    if (winner >= 0) out.payments[winner] = budget - (spent - cost[winner]);
    const double v = dual_objective(inst, duals, t, out);
    if (v > best_val) {
      best_val = v;
      best_out = std::move(out);
    }
  };

  // Everyone paid exactly cost.
  {
    std::vector<int> agents;
    std::vector<int> sizes;
    std::vector<double> profits;
    for (int j = 0; j < inst.n; ++j) {
      agents.push_back(j);
      sizes.push_back(cost[j]);
      profits.push_back(duals.alpha2[j][t[j]] + duals.beta2[j][t[j]] * cost[j] +
                        duals.gamma * spec.item_values[j]);
    }
    consider(knapsack_max(agents, sizes, profits, budget, nullptr), -1);
  }

  // One guessed winner absorbs the leftover budget; candidates for the rest
  // are the agents with a payment multiplier not above the winner's.
  for (int w = 0; w < inst.n; ++w) {
    if (cost[w] > budget) continue;
    const double beta_w = duals.beta2[w][t[w]];
    std::vector<int> agents;
    std::vector<int> sizes;
    std::vector<double> profits;
    for (int j = 0; j < inst.n; ++j) {
      if (j == w || duals.beta2[j][t[j]] > beta_w) continue;
      agents.push_back(j);
      sizes.push_back(cost[j]);
      profits.push_back(duals.alpha2[j][t[j]] +
                        (duals.beta2[j][t[j]] - beta_w) * cost[j] +
                        duals.gamma * spec.item_values[j]);
    }
    std::vector<int> procured = knapsack_max(agents, sizes, profits, budget - cost[w], nullptr);
    procured.push_back(w);
    std::sort(procured.begin(), procured.end());
    consider(procured, w);
  }
  return {best_out, best_val};
}

lp::LinearProgram multi_item_scenario_lp(const Instance& inst, const TypeVector& t) {
  const auto& spec = *inst.multi_item;
  const int nx = inst.n * inst.m;
  lp::LinearProgram prog;
  prog.objective.assign(nx + inst.n, 0.0);
  prog.lower.assign(nx + inst.n, 0.0);
  prog.upper.assign(nx + inst.n, 0.0);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.m; ++j) prog.upper[i * inst.m + j] = 1.0;
    prog.upper[nx + i] = inst.budget_cap(i, t[i]);
  }
  // Per-item supply.
  for (int j = 0; j < inst.m; ++j) {
    std::vector<double> row(nx + inst.n, 0.0);
    for (int i = 0; i < inst.n; ++i) row[i * inst.m + j] = 1.0;
    prog.add_row(std::move(row), lp::Relation::LessEq, spec.supply[j]);
  }
  // Ex-post IR for the reported type.
  for (int i = 0; i < inst.n; ++i) {
    std::vector<double> row(nx + inst.n, 0.0);
    for (int j = 0; j < inst.m; ++j) row[i * inst.m + j] = inst.item_values[i][t[i]][j];
    row[nx + i] = -1.0;
    prog.add_row(std::move(row), lp::Relation::GreaterEq, 0.0);
  }
  if (spec.envy_free) {
    for (int i = 0; i < inst.n; ++i) {
      for (int k = 0; k < inst.n; ++k) {
        if (k == i) continue;
        std::vector<double> row(nx + inst.n, 0.0);
        for (int j = 0; j < inst.m; ++j) {
          row[i * inst.m + j] += inst.item_values[i][t[i]][j];
          row[k * inst.m + j] -= inst.item_values[i][t[i]][j];
        }
        row[nx + i] -= 1.0;
        row[nx + k] += 1.0;
        prog.add_row(std::move(row), lp::Relation::GreaterEq, 0.0);
      }
    }
  }
  for (const auto& extra : spec.extra_rows) {
    std::vector<double> row(nx + inst.n, 0.0);
    for (int i = 0; i < inst.n; ++i) {
      for (int j = 0; j < inst.m; ++j) row[i * inst.m + j] = extra.x_coeffs[i][j];
      row[nx + i] = extra.p_coeffs[i];
    }
    const lp::Relation rel = extra.rel == '<'   ? lp::Relation::LessEq
                             : extra.rel == '>' ? lp::Relation::GreaterEq
                                                : lp::Relation::Equal;
    prog.add_row(std::move(row), rel, extra.rhs);
  }
  return prog;
}

OracleOutput oracle_multi_item_lp(const DualSnapshot& duals, const TypeVector& t,
                                  const Instance& inst) {
  lp::LinearProgram prog = multi_item_scenario_lp(inst, t);
  const int nx = inst.n * inst.m;
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.m; ++j) prog.objective[i * inst.m + j] = duals.alpha3[i][t[i]][j];
    prog.objective[nx + i] = duals.beta2.empty() ? 0.0 : duals.beta2[i][t[i]];
  }
  prog.sense = lp::Sense::Maximize;
  const lp::LpSolution sol = lp::solve_lp(prog);
  if (sol.status != lp::LpStatus::Optimal) {
    throw InfeasibleScenario("multi-item feasible set is empty or unbounded for this scenario");
  }
  Outcome out = make_outcome(inst);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.m; ++j) out.fractions[i][j] = sol.values[i * inst.m + j];
    out.payments[i] = sol.values[nx + i];
  }
  return {out, dual_objective(inst, duals, t, out)};
}

OracleOutput oracle_welfare_downward_closed(const DualSnapshot& duals, const TypeVector& t,
                                            const Instance& inst) {
  Outcome out = make_outcome(inst);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.m; ++j) {
      if (duals.alpha3[i][t[i]][j] < 0.0) {
        throw NegativeDual("welfare oracle requires non-negative multipliers");
      }
    }
  }
  for (int j = 0; j < inst.m; ++j) {
    int arg = -1;
    double best = 0.0;
    for (int i = 0; i < inst.n; ++i) {
      if (duals.alpha3[i][t[i]][j] > best) {
        best = duals.alpha3[i][t[i]][j];
        arg = i;
      }
    }
    if (arg >= 0) out.fractions[arg][j] = 1.0;
  }
  return {out, dual_objective(inst, duals, t, out)};
}

OracleOutput solve_setting_oracle(const Instance& inst, const DualSnapshot& duals,
                                  const TypeVector& t) {
  switch (inst.setting) {
    case Setting::MultiUnit:
      return oracle_multi_unit(duals, t, inst);
    case Setting::QuittingRights:
      return oracle_quitting_rights(duals, t, inst);
    case Setting::SoftBudget:
      return oracle_soft_budget(duals, t, inst);
    case Setting::SellerUtility:
      return oracle_seller_utility(duals, t, inst);
    case Setting::MultiItem:
      return inst.inequality_mode() ? oracle_welfare_downward_closed(duals, t, inst)
                                    : oracle_multi_item_lp(duals, t, inst);
    case Setting::Procurement:
      return oracle_procurement(duals, t, inst);
  }
  throw OracleFailure("unknown setting");
}

std::vector<std::string> check_outcome(const Instance& inst, const TypeVector& t,
                                       const Outcome& out, bool allpay_mode, double lp_tol) {
  std::vector<std::string> v;
  auto fail = [&v](const std::string& s) { v.push_back(s); };

  switch (inst.setting) {
    case Setting::MultiUnit:
    case Setting::QuittingRights:
    case Setting::SoftBudget: {
      int total = 0;
      for (int i = 0; i < inst.n; ++i) {
        const int q = out.quantities[i];
        const double p = out.payments[i];
        if (q < 0 || q > inst.m) fail("quantity out of range for buyer " + std::to_string(i));
        total += q;
        if (p < 0.0) fail("negative payment for buyer " + std::to_string(i));
        if (inst.setting == Setting::SoftBudget) {
          if (inst.soft_costs[i].value(p) > inst.unit_values[i][t[i]][q]) {
            fail("payment cost exceeds welfare for buyer " + std::to_string(i));
          }
        } else {
          if (p > inst.budget_cap(i, t[i])) fail("payment over budget for buyer " + std::to_string(i));
          if (p > inst.unit_values[i][t[i]][q]) {
            fail("payment exceeds reported-type welfare for buyer " + std::to_string(i));
          }
        }
      }
      if (total > inst.m) fail("supply exceeded");
      break;
    }
    case Setting::SellerUtility: {
      int total = 0;
      for (int i = 0; i < inst.n; ++i) {
        const int q = out.quantities[i];
        const double p = out.payments[i];
        total += q;
        if (q < 0 || q > inst.m) fail("quantity out of range for buyer " + std::to_string(i));
        if (p != std::floor(p) || std::abs(p) > inst.scale_bound) {
          fail("payment must be an integer in [-L, L] for buyer " + std::to_string(i));
        } else if (inst.buyer_utility_at(i, t[i], static_cast<int>(p), q) < 0.0) {
          fail("negative reported-type utility for buyer " + std::to_string(i));
        }
      }
      if (total > inst.m) fail("supply exceeded");
      break;
    }
    case Setting::MultiItem: {
      const auto& spec = *inst.multi_item;
      for (int j = 0; j < inst.m; ++j) {
        double s = 0.0;
        for (int i = 0; i < inst.n; ++i) s += out.fractions[i][j];
        if (s > spec.supply[j] + lp_tol) fail("supply exceeded for item " + std::to_string(j));
      }
      for (int i = 0; i < inst.n; ++i) {
        double welfare = 0.0;
        for (int j = 0; j < inst.m; ++j) {
          const double x = out.fractions[i][j];
          if (x < -lp_tol || x > 1.0 + lp_tol) fail("fraction out of [0,1]");
          welfare += inst.item_values[i][t[i]][j] * x;
        }
        const double p = out.payments[i];
        if (p < -lp_tol) fail("negative payment for buyer " + std::to_string(i));
        if (allpay_mode || inst.inequality_mode()) continue;  // no ex-post payment rows
        if (p > inst.budget_cap(i, t[i]) + lp_tol) {
          fail("payment over budget for buyer " + std::to_string(i));
        }
        if (welfare - p < -lp_tol) fail("ex-post IR violated for buyer " + std::to_string(i));
      }
      if (!allpay_mode && !inst.inequality_mode() && spec.envy_free) {
        for (int i = 0; i < inst.n; ++i) {
          double own = realized_utility(inst, i, t[i], out);
          for (int k = 0; k < inst.n; ++k) {
            if (k == i) continue;
            double other = -out.payments[k];
            for (int j = 0; j < inst.m; ++j) {
              other += inst.item_values[i][t[i]][j] * out.fractions[k][j];
            }
            if (own < other - lp_tol) fail("envy-freeness violated");
          }
        }
      }
      break;
    }
    case Setting::Procurement: {
      double spent = 0.0;
      for (int i = 0; i < inst.n; ++i) {
        const double p = out.payments[i];
        spent += p;
        if (out.procured[i]) {
          if (p < inst.procurement->costs[i][t[i]]) {
            fail("procured agent paid below cost: " + std::to_string(i));
          }
        } else if (p != 0.0) {
          fail("payment to a non-procured agent: " + std::to_string(i));
        }
      }
      if (spent > inst.procurement->budget) fail("auctioneer budget exceeded");
      break;
    }
  }
  return v;
}

}  // namespace auctions::oracles
