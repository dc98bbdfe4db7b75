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

#include <cstdint>
#include <vector>

#include "auctions/model.hpp"

namespace auctions {

/// One realization's allocation and payments. Only the fields of the
/// instance's setting are populated.
struct Outcome {
  std::vector<int> quantities;                 // multi-unit family and seller utility
  std::vector<double> payments;                // every setting (integers for seller utility)
  std::vector<std::vector<double>> fractions;  // multi-item x[i][j]
  std::vector<std::uint8_t> procured;          // procurement
};

Outcome make_outcome(const Instance& inst);

/// Realized utility of buyer `i` under `true_type` for a given outcome.
double realized_utility(const Instance& inst, int i, int true_type, const Outcome& out);

/// Sum of payments; for procurement, the auctioneer's procured value.
double outcome_objective_contribution(const Instance& inst, const Outcome& out);

/// Signed dual multipliers of one synthesis round, shaped per setting:
///   MultiUnit                alpha3[i][t][q],              beta2[i][t]
///   QuittingRights/SoftBudget alpha3[i][t_rep][t_true],    beta2[i][t]
///   SellerUtility            alpha4[i][t][p_idx][q],       gamma
///   MultiItem                alpha3[i][t][j],              beta2[i][t] (none in inequality mode)
///   Procurement              alpha2[i][t],                 beta2[i][t], gamma
///   Correlated multi-unit    alpha4[i][t_true][t_rep][q],  beta3[i][t_true][t_rep]
struct DualSnapshot {
  Setting setting = Setting::MultiUnit;
  std::vector<std::vector<double>> alpha2;
  std::vector<std::vector<std::vector<double>>> alpha3;
  std::vector<std::vector<std::vector<std::vector<double>>>> alpha4;
  std::vector<std::vector<double>> beta2;
  std::vector<std::vector<std::vector<double>>> beta3;
  double gamma = 0.0;  // non-negative: multiplies the value row (">=" only)
};

DualSnapshot make_dual_snapshot(const Instance& inst);

/// Interim tables, shaped exactly like the corresponding dual multipliers.
/// x* holds allocation probabilities (or expected utilities for the
/// quitting/soft settings), p* holds expected payments.
struct HolisticSolution {
  Setting setting = Setting::MultiUnit;
  std::vector<std::vector<double>> x2;
  std::vector<std::vector<std::vector<double>>> x3;
  std::vector<std::vector<std::vector<std::vector<double>>>> x4;
  std::vector<std::vector<double>> p2;
  std::vector<std::vector<std::vector<double>>> p3;
};

HolisticSolution make_holistic(const Instance& inst);

}  // namespace auctions
