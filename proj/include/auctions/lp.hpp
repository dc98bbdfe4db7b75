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

#include <limits>
#include <vector>

namespace auctions::lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };

struct LpRow {
  std::vector<double> coeffs;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

/// Small dense linear program. Bounds may be infinite on either side as
/// long as the rows keep the problem bounded.
struct LinearProgram {
  Sense sense = Sense::Maximize;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lower;  // -kInf allowed
  std::vector<double> upper;  // +kInf allowed

  int num_vars() const { return static_cast<int>(objective.size()); }
  void add_row(std::vector<double> coeffs, Relation rel, double rhs) {
    rows.push_back({std::move(coeffs), rel, rhs});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  /// Shadow prices of the input rows (Optimal only), oriented for the
  /// problem as given.
  std::vector<double> row_duals;
  /// Dual objective implied by row_duals and the active bounds; matches
  /// objective_value within 1e-6 on conditioned problems.
  double dual_objective = 0.0;
};

/// Deterministic dense tableau simplex. Dantzig pricing with Bland's rule
/// engaged on degenerate stalls; pivot tolerance 1e-9, feasibility 1e-7.
/// Throws DimensionMismatch on inconsistent input shapes.
LpSolution solve_lp(const LinearProgram& lp);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> witness;
};

/// Phase-one feasibility check for a bare row system.
FeasibilityResult check_feasible_lp(const std::vector<LpRow>& rows,
                                    const std::vector<double>& lower,
                                    const std::vector<double>& upper);

}  // namespace auctions::lp
