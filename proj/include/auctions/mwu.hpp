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

#include <any>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace auctions::mwu {

/// One expert row of a round's constraint system: a_i . x >= b_i, with a
/// width bound on |a_i . x - b_i| over every oracle-feasible solution.
struct ConstraintRow {
  std::function<double(const std::any& solution)> lhs;
  double rhs = 0.0;
  double width = 0.0;
};

struct RoundConstraints {
  std::vector<ConstraintRow> rows;
};

struct OracleResult {
  std::any solution;
  double value = 0.0;  // C(A_t, y_t) = max over the feasible set of y^T A x
};

using RoundSupplier = std::function<RoundConstraints(int round)>;
using RoundOracle =
    std::function<OracleResult(const RoundConstraints&, std::span<const double> weights)>;

/// Optional residual-driven stop: terminate once every row's running mean
/// violation clears -per_row_target[i]. The theoretical round count is
/// pseudo-polynomial and loose in practice; measured residuals are the
/// practical termination signal.
struct EarlyStop {
  std::vector<double> per_row_target;
  int min_rounds = 1;
  int check_every = 1;
};

struct EngineConfig {
  int rows = 0;
  double width = 0.0;       // rho: bound on every row's width
  double epsilon = 0.1;     // learning rate, in (0, 1/2)
  int max_rounds = 0;       // K
  bool normalize = true;    // keep ||y||_1 = 1 after each round
  bool store_solutions = false;
  bool store_violations = true;
  std::optional<EarlyStop> early_stop;
};

/// Expert weights held in log space so long runs cannot underflow to zero.
struct ExpertState {
  std::vector<double> log_weights;
  int round = 0;
  double width = 0.0;
  double epsilon = 0.1;

  static ExpertState initial(int rows, double width, double epsilon);

  /// Current weights; normalized to unit l1 norm when `normalized` is set.
  std::vector<double> weights(bool normalized = true) const;
};

/// Multiplicative update: w_i *= (1-eps)^{M_i/rho} for M_i >= 0 and
/// (1+eps)^{-M_i/rho} for M_i < 0. Throws WidthViolation when |M_i| exceeds
/// the declared width.
ExpertState update_weights(const ExpertState& state, std::span<const double> violations,
                           bool normalize = true);

struct MwuTranscript {
  enum class Status { Completed, DeclaredInfeasible };

  Status status = Status::Completed;
  int rounds_run = 0;
  int infeasible_round = -1;  // 0-based, valid when DeclaredInfeasible
  bool stopped_early = false;
  std::vector<double> violation_sums;            // per row, over all rounds run
  std::vector<std::vector<double>> violations;   // per round, if stored
  std::vector<std::any> solutions;               // per round, if stored
  std::vector<double> final_weights;
};

/// The feasibility engine: per round, obtains the round's constraints,
/// invokes the oracle at the current weights, declares infeasibility when
/// C(A_t, y_t) < y_t . b_t, and otherwise performs the multiplicative
/// update on the observed violations.
///
/// When no round declares infeasibility and the engine runs the full K
/// rounds, every averaged violation satisfies mean_t(a_i x_t - b_i) >=
/// -epsilon * width (width-scaled reading of the guarantee).
MwuTranscript run_generalized_ahk(const EngineConfig& config, const RoundSupplier& supplier,
                                  const RoundOracle& oracle);

/// Per-row arithmetic mean of the violations over the rounds run.
/// Throws IncompleteTranscript on an empty or infeasible transcript.
std::vector<double> average_violation(const MwuTranscript& transcript);

/// K = ceil(4 rho^2 ln r / eps^2), the round count of the base procedure.
inline long theoretical_round_count(double width, int rows, double epsilon) {
  return static_cast<long>(
      std::ceil(4.0 * width * width * std::log(static_cast<double>(rows)) / (epsilon * epsilon)));
}

}  // namespace auctions::mwu
