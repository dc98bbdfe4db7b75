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

#include "auctions/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "auctions/errors.hpp"
#include "auctions/lp_exp.hpp"
#include "auctions/mwu.hpp"
#include "auctions/oracles.hpp"

namespace auctions::synthesis {

namespace {

enum class RowClass { Allocation, Payment, Utility, Value };

RowClass cell_class(const CellLayout& layout, int cell) {
  if (cell >= layout.x_count()) return RowClass::Payment;
  if (layout.setting == Setting::QuittingRights || layout.setting == Setting::SoftBudget) {
    return RowClass::Utility;
  }
  return RowClass::Allocation;
}

double class_target(const StopTargets& stop, RowClass cls) {
  switch (cls) {
    case RowClass::Allocation: return stop.allocation;
    case RowClass::Payment: return stop.payment;
    case RowClass::Utility: return stop.utility;
    case RowClass::Value: return stop.value;
  }
  return stop.allocation;
}

double value_statistic_bound(const Instance& inst) {
  if (inst.setting == Setting::SellerUtility) {
    double b = 0.0;
    for (double v : inst.seller_utility->values) b = std::max(b, std::abs(v));
    return b;
  }
  if (inst.setting == Setting::Procurement) {
    double b = 0.0;
    for (double v : inst.procurement->item_values) b += v;
    return b;
  }
  return 0.0;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || count < 2 * threads) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&next, count, &fn] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double cell_sample_stat(const Instance& inst, const CellLayout& layout, int cell,
                        const TypeVector& t, const Outcome& out) {
  if (cell < layout.x_count()) {
    return x_cell_sample_value(inst, layout, layout.x_cells[cell], t, out);
  }
  return p_cell_sample_value(inst, layout, layout.p_cells[cell - layout.x_count()], t, out);
}

}  // namespace

ConstraintSystem make_constraint_system(const Instance& inst, const SynthesisConfig& config,
                                        double target) {
  ConstraintSystem sys;
  sys.layout = make_cell_layout(inst);
  sys.delta = config.delta;
  sys.target = target;
  const int nc = sys.cell_count();
  sys.cell_width.resize(nc);
  sys.cell_divisor.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const double w = c < sys.layout.x_count()
                         ? x_cell_width(inst, sys.layout, sys.layout.x_cells[c])
                         : p_cell_width(inst, sys.layout,
                                        sys.layout.p_cells[c - sys.layout.x_count()]);
    sys.cell_width[c] = w;
    sys.cell_divisor[c] = w + config.delta;
  }
  sys.value_divisor = value_statistic_bound(inst) + std::abs(target) + config.delta;
  sys.cells_by_report.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) sys.cells_by_report[i].resize(inst.types_of(i));
  for (int c = 0; c < sys.layout.x_count(); ++c) {
    const XCell& cell = sys.layout.x_cells[c];
    sys.cells_by_report[cell.i][x_cell_reported_type(sys.layout, cell)].push_back(c);
  }
  for (int k = 0; k < sys.layout.p_count(); ++k) {
    const PCell& cell = sys.layout.p_cells[k];
    sys.cells_by_report[cell.i][p_cell_reported_type(sys.layout, cell)].push_back(
        sys.layout.x_count() + k);
  }
  return sys;
}

void build_round_constraints(const Instance& inst, const SynthesisConfig& config,
                             ConstraintSystem& system, RngStream& rng) {
  system.groups.clear();
  std::map<TypeVector, int> counts;
  for (int s = 0; s < config.samples_per_round; ++s) {
    counts[sample_type_vector(inst.prior, rng)] += 1;
  }
  system.groups.reserve(counts.size());
  for (auto& [types, count] : counts) system.groups.push_back({types, count});
  system.total_samples = config.samples_per_round;

  std::vector<std::vector<int>> type_counts(inst.n);
  for (int i = 0; i < inst.n; ++i) type_counts[i].assign(inst.types_of(i), 0);
  for (const auto& g : system.groups) {
    for (int i = 0; i < inst.n; ++i) type_counts[i][g.types[i]] += g.count;
  }
  system.cell_sample_size.assign(system.cell_count(), 0);
  for (int c = 0; c < system.layout.x_count(); ++c) {
    const XCell& cell = system.layout.x_cells[c];
    system.cell_sample_size[c] = type_counts[cell.i][x_cell_reported_type(system.layout, cell)];
  }
  for (int k = 0; k < system.layout.p_count(); ++k) {
    const PCell& cell = system.layout.p_cells[k];
    system.cell_sample_size[system.layout.x_count() + k] =
        type_counts[cell.i][p_cell_reported_type(system.layout, cell)];
  }
}

CombinedOracleResult combined_oracle(const Instance& inst, const ConstraintSystem& system,
                                     std::span<const double> weights, int threads) {
  const CellLayout& layout = system.layout;
  const int nc = system.cell_count();

  std::vector<double> tilde(nc, 0.0);
  for (int c = 0; c < nc; ++c) {
    if (system.cell_sample_size[c] > 0) {
      tilde[c] = (weights[2 * c] - weights[2 * c + 1]) / system.cell_divisor[c];
    }
  }
  const double gamma_tilde =
      layout.has_value_row ? weights[2 * nc] / system.value_divisor : 0.0;

  CombinedOracleResult result;
  RoundSolution& sol = result.solution;
  sol.snapshot = make_dual_snapshot(inst);
  for (int c = 0; c < nc; ++c) {
    if (system.cell_sample_size[c] > 0) {
      dual_set(sol.snapshot, layout, c, tilde[c] / system.cell_sample_size[c]);
    }
  }
  if (layout.has_value_row && system.total_samples > 0) {
    sol.snapshot.gamma = gamma_tilde / system.total_samples;
  }

  DualSnapshot lambda = make_dual_snapshot(inst);
  for (int c = 0; c < nc; ++c) {
    dual_set(lambda, layout, c, tilde[c] / cell_marginal(inst, layout, c));
  }
  const lpexp::LpExpResult lpres = lpexp::solve_lp_exp(inst, layout, lambda, system.target);
  if (!lpres.feasible) {
    result.lp_infeasible = true;
    return result;
  }
  sol.holistic.resize(layout.var_count());
  for (int v = 0; v < layout.var_count(); ++v) {
    sol.holistic[v] = holistic_get(lpres.solution, layout, v);
  }

  const int n_groups = static_cast<int>(system.groups.size());
  std::vector<Outcome> outs(n_groups);
  parallel_for(n_groups, threads, [&](int g) {
    outs[g] = oracles::solve_setting_oracle(inst, sol.snapshot, system.groups[g].types).outcome;
  });

  double action_sum = 0.0;
  double value_sum = 0.0;
  std::vector<double> cell_sums(nc, 0.0);
  for (int g = 0; g < n_groups; ++g) {
    const auto& group = system.groups[g];
    action_sum += group.count * oracles::dual_objective(inst, sol.snapshot, group.types, outs[g]);
    for (int i = 0; i < inst.n; ++i) {
      for (int c : system.cells_by_report[i][group.types[i]]) {
        cell_sums[c] +=
            group.count * cell_sample_stat(inst, layout, c, group.types, outs[g]);
      }
    }
    if (layout.has_value_row) {
      value_sum += group.count * outcome_objective_contribution(inst, outs[g]);
    }
  }
  sol.cell_avgs.assign(nc, 0.0);
  for (int c = 0; c < nc; ++c) {
    if (system.cell_sample_size[c] > 0) sol.cell_avgs[c] = cell_sums[c] / system.cell_sample_size[c];
  }
  if (system.total_samples > 0) sol.value_stat = value_sum / system.total_samples;

  double slack_sum = 0.0;
  for (int c = 0; c < nc; ++c) {
    if (system.cell_sample_size[c] > 0) {
      slack_sum += (weights[2 * c] + weights[2 * c + 1]) * system.delta / system.cell_divisor[c];
    }
  }
  result.c_value = action_sum - lpres.objective + slack_sum;
  return result;
}

namespace {

SynthesisResult synthesize_attempt(const Instance& inst, const SynthesisConfig& config,
                                   double target, std::uint64_t salt) {
  ConstraintSystem system = make_constraint_system(inst, config, target);
  const int nc = system.cell_count();
  const int rows = system.row_count();
  const CellLayout& layout = system.layout;

  SynthesisResult result;
  std::vector<DualSnapshot> snapshots;
  std::vector<double> holistic_sum(layout.var_count(), 0.0);
  std::vector<double> c_values;

  RngStream base = RngStream::from_seed(config.seed, 0x53594E ^ salt);

  const mwu::RoundSupplier supplier = [&](int round) {
    RngStream rng = base.split(static_cast<std::uint64_t>(round) + 1);
    build_round_constraints(inst, config, system, rng);
    mwu::RoundConstraints rc;
    rc.rows.reserve(rows);
    for (int c = 0; c < nc; ++c) {
      const bool empty = system.cell_sample_size[c] == 0;
      const double div = system.cell_divisor[c];
      const double delta = system.delta;
      rc.rows.push_back({[c, empty, div, delta](const std::any& s) {
                           if (empty) return 0.0;
                           const auto& rs = std::any_cast<const RoundSolution&>(s);
                           return (rs.cell_avgs[c] - rs.holistic[c] + delta) / div;
                         },
                         0.0, 1.0});
      rc.rows.push_back({[c, empty, div, delta](const std::any& s) {
                           if (empty) return 0.0;
                           const auto& rs = std::any_cast<const RoundSolution&>(s);
                           return (rs.holistic[c] - rs.cell_avgs[c] + delta) / div;
                         },
                         0.0, 1.0});
    }
    if (layout.has_value_row) {
      const double div = system.value_divisor;
      rc.rows.push_back({[div](const std::any& s) {
                           return std::any_cast<const RoundSolution&>(s).value_stat / div;
                         },
                         target / div, 1.0});
    }
    return rc;
  };

  const mwu::RoundOracle oracle = [&](const mwu::RoundConstraints&,
                                      std::span<const double> w) -> mwu::OracleResult {
    CombinedOracleResult r = combined_oracle(inst, system, w, config.threads);
    if (r.lp_infeasible) {
      return {std::any{}, -std::numeric_limits<double>::infinity()};
    }
    snapshots.push_back(r.solution.snapshot);
    for (int v = 0; v < layout.var_count(); ++v) holistic_sum[v] += r.solution.holistic[v];
    if (config.log_rounds) c_values.push_back(r.c_value);
    return {std::any(std::move(r.solution)), r.c_value};
  };

  mwu::EngineConfig ec;
  ec.rows = rows;
  ec.width = 1.0;
  ec.max_rounds = config.max_rounds;
  ec.store_violations = config.log_rounds;
  double min_scaled_target = 0.1;
  if (config.early_stop_enabled) {
    mwu::EarlyStop es;
    es.min_rounds = config.min_rounds;
    es.check_every = config.stop_check_every;
    es.per_row_target.assign(rows, 0.0);
    min_scaled_target = std::numeric_limits<double>::infinity();
    for (int c = 0; c < nc; ++c) {
      const double cls = class_target(config.stop, cell_class(layout, c));
      if (cls <= config.delta) {
        throw std::invalid_argument("stop target must exceed the row slack delta");
      }
      const double scaled = (cls - config.delta) / system.cell_divisor[c];
      es.per_row_target[2 * c] = scaled;
      es.per_row_target[2 * c + 1] = scaled;
      min_scaled_target = std::min(min_scaled_target, scaled);
    }
    if (layout.has_value_row) {
      es.per_row_target[2 * nc] = config.stop.value / system.value_divisor;
      min_scaled_target = std::min(min_scaled_target, es.per_row_target[2 * nc]);
    }
    ec.early_stop = std::move(es);
  }
  ec.epsilon = config.mwu_epsilon > 0.0
                   ? config.mwu_epsilon
                   : std::clamp(0.5 * min_scaled_target, 1e-4, 0.2);

  const mwu::MwuTranscript transcript = mwu::run_generalized_ahk(ec, supplier, oracle);
  result.rounds_run = transcript.rounds_run;
  result.stopped_early = transcript.stopped_early;
  if (config.log_rounds) {
    for (int r = 0; r < transcript.rounds_run; ++r) {
      double worst = 0.0;
      for (double v : transcript.violations[r]) worst = std::min(worst, v);
      result.round_log.push_back({worst, r < static_cast<int>(c_values.size()) ? c_values[r] : 0.0});
    }
  }
  if (transcript.status == mwu::MwuTranscript::Status::DeclaredInfeasible) {
    result.infeasible_round = transcript.infeasible_round;
    return result;
  }
  if (config.early_stop_enabled && !transcript.stopped_early) {
    result.hit_round_cap = true;
    return result;
  }

  Mechanism mech;
  mech.setting = inst.setting;
  mech.n = inst.n;
  mech.m = inst.m;
  mech.scale_bound = inst.scale_bound;
  mech.type_counts.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) mech.type_counts[i] = inst.types_of(i);
  mech.correlated = inst.correlated();
  mech.inequality = inst.inequality_mode();
  mech.target = target;
  mech.seed = config.seed;
  if (static_cast<int>(snapshots.size()) != transcript.rounds_run) {
    throw OracleFailure("snapshot count diverged from the rounds run");
  }
  mech.snapshots = std::move(snapshots);
  mech.holistic_avg = make_holistic(inst);
  for (int v = 0; v < layout.var_count(); ++v) {
    holistic_set(mech.holistic_avg, layout, v, holistic_sum[v] / transcript.rounds_run);
  }
  mech.config = config;
  result.mechanism = std::move(mech);
  result.feasible = true;
  return result;
}

}  // namespace

SynthesisResult synthesize(const Instance& inst, const SynthesisConfig& config, double target) {
  SynthesisResult result = synthesize_attempt(inst, config, target, 0);
  if (!result.feasible && config.retry_on_infeasible) {
    result = synthesize_attempt(inst, config, target, 0xA5A5A5A5ULL);
  }
  return result;
}

namespace {

double search_upper_bound(const Instance& inst) {
  switch (inst.setting) {
    case Setting::MultiUnit:
    case Setting::QuittingRights: {
      double total = 0.0;
      for (int i = 0; i < inst.n; ++i) {
        double best = 0.0;
        for (int t = 0; t < inst.types_of(i); ++t) {
          double vmax = 0.0;
          for (double v : inst.unit_values[i][t]) vmax = std::max(vmax, v);
          best = std::max(best, std::min(inst.budget_cap(i, t), vmax));
        }
        total += best;
      }
      return total;
    }
    case Setting::SoftBudget: {
      double total = 0.0;
      for (int i = 0; i < inst.n; ++i) {
        double best = 0.0;
        for (int t = 0; t < inst.types_of(i); ++t) {
          double vmax = 0.0;
          for (double v : inst.unit_values[i][t]) vmax = std::max(vmax, v);
          best = std::max(best, inst.soft_costs[i].inverse(vmax));
        }
        total += best;
      }
      return total;
    }
    case Setting::SellerUtility:
      return inst.seller_utility->values.back();
    case Setting::MultiItem: {
      double total = 0.0;
      for (int i = 0; i < inst.n; ++i) {
        double best = 0.0;
        for (int t = 0; t < inst.types_of(i); ++t) {
          double welfare = 0.0;
          for (double v : inst.item_values[i][t]) welfare += v;
          best = std::max(best, std::min(inst.budget_cap(i, t), welfare));
        }
        total += best;
      }
      return total;
    }
    case Setting::Procurement: {
      double total = 0.0;
      for (double v : inst.procurement->item_values) total += v;
      return total;
    }
  }
  return inst.n * inst.scale_bound;
}

}  // namespace

SearchResult binary_search_revenue(const Instance& inst, const SynthesisConfig& config) {
  SearchResult out;
  SynthesisResult base = synthesize(inst, config, 0.0);
  ++out.probes;
  if (!base.feasible) {
    throw OracleFailure("synthesis did not converge at target 0; configuration too tight");
  }
  out.mechanism = std::move(base.mechanism);
  out.revenue = 0.0;

  double lo = 0.0;
  double hi = std::min(inst.n * inst.scale_bound, search_upper_bound(inst)) + 1e-9;
  const double granularity = std::max(config.epsilon_target / 4.0, 1e-6);
  while (hi - lo > granularity) {
    const double mid = 0.5 * (lo + hi);
    SynthesisResult probe = synthesize(inst, config, mid);
    ++out.probes;
    if (probe.feasible) {
      lo = mid;
      out.mechanism = std::move(probe.mechanism);
      out.revenue = mid;
    } else {
      hi = mid;
    }
  }
  return out;
}

Mechanism wrap_private_budgets(Mechanism mech, const Instance& inst, double eta) {
  if (inst.setting != Setting::MultiUnit || !inst.private_budgets()) {
    throw SettingMismatch("private-budget wrapper needs a multi-unit instance with private budgets");
  }
  if (eta < 0.0 || eta > 1.0) {
    throw std::invalid_argument("giveaway probability must lie in [0, 1]");
  }
  mech.eta = eta;
  return mech;
}

Mechanism apply_scaling_fix(Mechanism mech, const Instance& inst,
                            const HolisticSolution& realized_interim) {
  if (!mech.inequality) {
    throw SettingMismatch("the scaling fix applies to inequality-mode mechanisms only");
  }
  mech.scale_factors.assign(inst.n, {});
  mech.allpay_payments.assign(inst.n, {});
  for (int i = 0; i < inst.n; ++i) {
    mech.scale_factors[i].assign(inst.types_of(i), std::vector<double>(inst.m, 1.0));
    mech.allpay_payments[i].assign(inst.types_of(i), 0.0);
    for (int t = 0; t < inst.types_of(i); ++t) {
      for (int j = 0; j < inst.m; ++j) {
        const double target = mech.holistic_avg.x3[i][t][j] / mech.c_factor;
        const double realized = realized_interim.x3[i][t][j];
        if (realized <= 0.0) {
          if (target > mech.config.delta) {
            throw DegenerateRatio("zero realized allocation against a non-trivial target");
          }
          mech.scale_factors[i][t][j] = 1.0;
        } else {
          mech.scale_factors[i][t][j] = std::min(1.0, target / realized);
        }
      }
      mech.allpay_payments[i][t] = mech.holistic_avg.p2[i][t] / mech.c_factor;
    }
  }
  mech.scaling_applied = true;
  return mech;
}

SynthesisConfig SynthesisConfig::practical(const Instance& inst, double epsilon_target,
                                           std::uint64_t seed) {
  SynthesisConfig c;
  c.epsilon_target = epsilon_target;
  c.seed = seed;

  // Largest coefficient a holistic cell carries into a truthfulness row.
  double coeff = 1.0;
  switch (inst.setting) {
    case Setting::MultiUnit:
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          for (double v : inst.unit_values[i][t]) coeff = std::max(coeff, v);
        }
      }
      break;
    case Setting::SellerUtility:
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          for (const auto& row : inst.buyer_utility[i][t]) {
            for (double u : row) coeff = std::max(coeff, std::abs(u));
          }
        }
      }
      break;
    case Setting::MultiItem:
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          for (double v : inst.item_values[i][t]) coeff = std::max(coeff, v);
        }
      }
      break;
    case Setting::Procurement:
      coeff = inst.scale_bound;
      break;
  }

  c.stop.allocation = std::max(0.004, 0.15 * epsilon_target / ((inst.m + 1) * coeff));
  c.stop.payment = 0.15 * epsilon_target;
  c.stop.utility = 0.2 * epsilon_target;
  c.stop.value = 0.25 * epsilon_target;
  const double min_stop = std::min({c.stop.allocation, c.stop.payment, c.stop.utility});
  c.delta = std::min(epsilon_target / (inst.n * inst.m * inst.scale_bound), 0.5 * min_stop);
  c.samples_per_round =
      std::max(500, 32 * inst.n * inst.m * static_cast<int>(inst.scale_bound));
  c.max_rounds = 30000;
  c.min_rounds = 200;
  c.stop_check_every = 25;
  c.mwu_epsilon = 0.0;  // auto from the tightest scaled target
  return c;
}

SynthesisConfig SynthesisConfig::theoretical(const Instance& inst, double epsilon_target,
                                             std::uint64_t seed) {
  SynthesisConfig c;
  c.epsilon_target = epsilon_target;
  c.seed = seed;
  const double L = inst.scale_bound;
  const double nm = static_cast<double>(inst.n) * std::max(1, inst.m);
  c.delta = epsilon_target / (nm * L);
  const double k = L * L * std::log(nm * L + 2.0) / (c.delta * c.delta);
  c.max_rounds = static_cast<int>(std::min(1e8, std::ceil(k)));
  const double samples =
      nm * L * L * L * std::log(nm * L * std::max(1.0, k) + 2.0) / epsilon_target;
  c.samples_per_round = static_cast<int>(std::min(1e7, std::ceil(samples)));
  c.early_stop_enabled = false;
  c.mwu_epsilon = std::min(0.25, c.delta / (std::max(1, inst.m) * L));
  return c;
}

}  // namespace auctions::synthesis
