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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "auctions/cells.hpp"
#include "auctions/model.hpp"
#include "auctions/outcomes.hpp"
#include "auctions/rng.hpp"

namespace auctions::synthesis {

/// Absolute residual targets per constraint-row class, in the row's own
/// units. Termination requires every row's running mean violation to clear
/// its class target.
struct StopTargets {
  double allocation = 0.02;
  double payment = 0.1;
  double utility = 0.1;
  double value = 0.1;
};

struct SynthesisConfig {
  double epsilon_target = 0.1;
  double delta = 0.0;        // per-coupling-row slack
  int samples_per_round = 0; // C
  int max_rounds = 0;        // K cap
  double mwu_epsilon = 0.05;
  bool early_stop_enabled = true;
  StopTargets stop;
  int min_rounds = 64;
  int stop_check_every = 16;
  double eta = 0.0;          // private-budget giveaway probability
  bool retry_on_infeasible = false;
  std::uint64_t seed = 1;
  int threads = 1;
  bool log_rounds = false;

  /// Engineering defaults tuned for desk-scale instances; the acceptance
  /// targets are measured residuals, not the theoretical round counts.
  static SynthesisConfig practical(const Instance& inst, double epsilon_target,
                                   std::uint64_t seed = 1);
  /// The pseudo-polynomial sample and round counts with constant 1 in the
  /// big-O expressions. Impractically loose except on toy systems.
  static SynthesisConfig theoretical(const Instance& inst, double epsilon_target,
                                     std::uint64_t seed = 1);
};

/// One round's relaxed two-sided coupling system over sampled scenarios.
struct ConstraintSystem {
  CellLayout layout;
  double delta = 0.0;
  // Static per-cell data: widths and the scale divisors that normalize
  // every row to width <= 1.
  std::vector<double> cell_width;
  std::vector<double> cell_divisor;
  double value_divisor = 1.0;
  double target = 0.0;
  // Cells grouped by (buyer, reported type) for sample aggregation.
  std::vector<std::vector<std::vector<int>>> cells_by_report;  // [i][t] -> cell ids

  struct SampleGroup {
    TypeVector types;
    int count = 0;
  };
  std::vector<SampleGroup> groups;
  std::vector<int> cell_sample_size;  // per cell: |S_{i, reported}|
  int total_samples = 0;

  int cell_count() const { return layout.x_count() + layout.p_count(); }
  int row_count() const { return 2 * cell_count() + (layout.has_value_row ? 1 : 0); }
};

/// Per-round oracle payload: the sampled averages, the holistic optimum,
/// and the per-sample duals that the eventual mechanism replays.
struct RoundSolution {
  std::vector<double> cell_avgs;
  std::vector<double> holistic;     // flat, layout order
  double value_stat = 0.0;          // sample mean of the objective row statistic
  DualSnapshot snapshot;
};

struct CombinedOracleResult {
  RoundSolution solution;
  double c_value = 0.0;
  bool lp_infeasible = false;
};

/// Static parts of the round systems: layout, widths, normalizing divisors.
ConstraintSystem make_constraint_system(const Instance& inst, const SynthesisConfig& config,
                                        double target);

/// Draw C fresh scenarios, partition them by (buyer, reported type), and
/// fill the round's relaxed coupling system. Rows of empty partitions are
/// skipped for the round.
void build_round_constraints(const Instance& inst, const SynthesisConfig& config,
                             ConstraintSystem& system, RngStream& rng);

/// The decoupled oracle: converts paired expert weights to signed duals,
/// solves the holistic LP once and the setting oracle per sampled scenario,
/// and reports C(A_t, y_t).
CombinedOracleResult combined_oracle(const Instance& inst, const ConstraintSystem& system,
                                     std::span<const double> weights, int threads = 1);

/// A synthesized mechanism: per-round dual snapshots executed by uniform
/// round choice, plus mode wrappers.
struct Mechanism {
  Setting setting = Setting::MultiUnit;
  int n = 0;
  int m = 0;
  double scale_bound = 0.0;
  std::vector<int> type_counts;
  bool correlated = false;
  bool inequality = false;
  double c_factor = 1.0;   // welfare-oracle approximation factor
  double eta = 0.0;        // private-budget giveaway probability
  double target = 0.0;     // revenue (or objective) the synthesis was run at
  std::uint64_t seed = 0;
  std::vector<DualSnapshot> snapshots;
  HolisticSolution holistic_avg;  // averaged holistic optima (verification targets)
  bool scaling_applied = false;
  std::vector<std::vector<std::vector<double>>> scale_factors;  // [i][t][j]
  std::vector<std::vector<double>> allpay_payments;             // [i][t]
  SynthesisConfig config;

  int rounds() const { return static_cast<int>(snapshots.size()); }
};

struct SynthesisResult {
  bool feasible = false;
  Mechanism mechanism;
  int rounds_run = 0;
  bool stopped_early = false;
  int infeasible_round = -1;  // oracle-declared infeasibility, if any
  bool hit_round_cap = false; // residual targets unmet within the cap
  // When logging is on: (worst mean violation, round C value) per round.
  std::vector<std::array<double, 2>> round_log;
};

/// Run the feasibility engine at target revenue (or objective) R with fresh
/// per-round constraint systems. Returns the mechanism on success; reports
/// infeasibility on an oracle signal or, with early stopping enabled, when
/// the residual targets are not met within the round cap.
SynthesisResult synthesize(const Instance& inst, const SynthesisConfig& config, double target);

struct SearchResult {
  Mechanism mechanism;
  double revenue = 0.0;  // largest target that synthesized successfully
  int probes = 0;
};

/// Bisect the target over [0, n L] to granularity epsilon_target / 4,
/// keeping the largest feasible target and its mechanism.
SearchResult binary_search_revenue(const Instance& inst, const SynthesisConfig& config);

/// Private-budget wrapper: with probability eta the mechanism hands every
/// item to buyer 0 at price zero; otherwise the base mechanism runs.
Mechanism wrap_private_budgets(Mechanism mech, const Instance& inst, double eta);

/// Inequality-mode fix: per-cell allocation dampening toward the holistic
/// targets and a switch to all-pay payments of P/c.
Mechanism apply_scaling_fix(Mechanism mech, const Instance& inst,
                            const HolisticSolution& realized_interim);

}  // namespace auctions::synthesis
