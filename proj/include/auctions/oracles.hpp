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

#include <string>
#include <vector>

#include "auctions/lp.hpp"
#include "auctions/model.hpp"
#include "auctions/outcomes.hpp"

namespace auctions::oracles {

struct OracleOutput {
  Outcome outcome;
  double value = 0.0;
};

/// The dual-weighted objective a per-scenario oracle maximizes, evaluated
/// on a concrete outcome. Every oracle reports the value of its maximizer
/// through this one evaluator, so values from different solution routes
/// compare exactly.
double dual_objective(const Instance& inst, const DualSnapshot& duals, const TypeVector& t,
                      const Outcome& out);

// Per-setting exact maximizers over F(t). All are deterministic: ties break
// toward lower buyer index, then lower quantity, then lower payment.
OracleOutput oracle_multi_unit(const DualSnapshot& duals, const TypeVector& t,
                               const Instance& inst);
OracleOutput oracle_quitting_rights(const DualSnapshot& duals, const TypeVector& t,
                                    const Instance& inst);
OracleOutput oracle_soft_budget(const DualSnapshot& duals, const TypeVector& t,
                                const Instance& inst);
OracleOutput oracle_seller_utility(const DualSnapshot& duals, const TypeVector& t,
                                   const Instance& inst);
OracleOutput oracle_procurement(const DualSnapshot& duals, const TypeVector& t,
                                const Instance& inst);
OracleOutput oracle_multi_item_lp(const DualSnapshot& duals, const TypeVector& t,
                                  const Instance& inst);
/// Inequality mode: exact welfare maximization for additive valuations with
/// unit per-item supply (a 1-approximate oracle). Requires duals >= 0.
OracleOutput oracle_welfare_downward_closed(const DualSnapshot& duals, const TypeVector& t,
                                            const Instance& inst);

/// Dispatch on the instance's setting and mode flags.
OracleOutput solve_setting_oracle(const Instance& inst, const DualSnapshot& duals,
                                  const TypeVector& t);

/// Finite payment candidate sets that contain an optimal payment for the
/// given allocation; also the action grids of the brute-force optimum.
std::vector<double> quitting_payment_candidates(const Instance& inst, int i, int reported, int q);
std::vector<double> soft_payment_candidates(const Instance& inst, int i, int reported, int q);

/// The per-scenario feasible set of the multi-item setting as an LP over
/// variables (x_00..x_{n-1,m-1}, p_0..p_{n-1}), objective left zero.
lp::LinearProgram multi_item_scenario_lp(const Instance& inst, const TypeVector& t);

/// Exact F(t) membership check; returns violations (empty = member).
/// LP-backed settings use `lp_tol`, the discrete settings are exact.
std::vector<std::string> check_outcome(const Instance& inst, const TypeVector& t,
                                       const Outcome& out, bool allpay_mode = false,
                                       double lp_tol = 1e-7);

}  // namespace auctions::oracles
