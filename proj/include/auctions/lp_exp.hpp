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

#include <optional>
#include <vector>

#include "auctions/cells.hpp"
#include "auctions/lp.hpp"
#include "auctions/model.hpp"
#include "auctions/outcomes.hpp"

namespace auctions::lpexp {

/// Sparse linear row over holistic variables (flat cell indices).
struct HolisticTerm {
  int var = 0;
  double coeff = 0.0;
};

struct HolisticRow {
  std::vector<HolisticTerm> terms;
  lp::Relation rel = lp::Relation::GreaterEq;
  double rhs = 0.0;
};

/// Truthfulness rows (lhs >= 0 oriented: truthful minus misreport).
/// Private-budget instances restrict misreports to types with a budget not
/// above the truthful type's.
std::vector<HolisticRow> bic_rows(const Instance& inst, const CellLayout& layout);

/// Expected-revenue row (settings whose objective row lives on holistic
/// payments); absent for seller utility and procurement.
std::optional<HolisticRow> revenue_row(const Instance& inst, const CellLayout& layout,
                                       double target);

/// Allocation-simplex rows plus, in inequality mode, the ex-interim IR rows.
std::vector<HolisticRow> structural_rows(const Instance& inst, const CellLayout& layout);

/// Box bounds of the holistic variables.
void holistic_bounds(const Instance& inst, const CellLayout& layout, std::vector<double>& lower,
                     std::vector<double>& upper);

struct LpExpResult {
  bool feasible = false;
  HolisticSolution solution;
  double objective = 0.0;
};

/// The holistic side of the decoupled oracle: minimize the prior-weighted,
/// dual-weighted sum of interim variables subject to BIC, the revenue row
/// at `target`, the structural rows, and the box bounds. An infeasible
/// polytope is a feasibility signal, not an error.
LpExpResult solve_lp_exp(const Instance& inst, const CellLayout& layout,
                         const DualSnapshot& duals, double target);

}  // namespace auctions::lpexp
