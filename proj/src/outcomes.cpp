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

#include "auctions/outcomes.hpp"

#include <algorithm>

namespace auctions {

Outcome make_outcome(const Instance& inst) {
  Outcome out;
  out.payments.assign(inst.n, 0.0);
  switch (inst.setting) {
    case Setting::MultiUnit:
    case Setting::QuittingRights:
    case Setting::SoftBudget:
    case Setting::SellerUtility:
      out.quantities.assign(inst.n, 0);
      break;
    case Setting::MultiItem:
      out.fractions.assign(inst.n, std::vector<double>(inst.m, 0.0));
      break;
    case Setting::Procurement:
      out.procured.assign(inst.n, 0);
      break;
  }
  return out;
}

double realized_utility(const Instance& inst, int i, int true_type, const Outcome& out) {
  switch (inst.setting) {
    case Setting::MultiUnit:
      return inst.unit_values[i][true_type][out.quantities[i]] - out.payments[i];
    case Setting::QuittingRights:
      return std::max(inst.unit_values[i][true_type][out.quantities[i]] - out.payments[i], 0.0);
    case Setting::SoftBudget:
      return inst.unit_values[i][true_type][out.quantities[i]] -
             inst.soft_costs[i].value(out.payments[i]);
    case Setting::SellerUtility:
      return inst.buyer_utility_at(i, true_type, static_cast<int>(out.payments[i]),
                                   out.quantities[i]);
    case Setting::MultiItem: {
      double welfare = 0.0;
      for (int j = 0; j < inst.m; ++j) {
        welfare += inst.item_values[i][true_type][j] * out.fractions[i][j];
      }
      return welfare - out.payments[i];
    }
    case Setting::Procurement:
      return out.payments[i] - inst.procurement->costs[i][true_type] * out.procured[i];
  }
  return 0.0;
}

double outcome_objective_contribution(const Instance& inst, const Outcome& out) {
  if (inst.setting == Setting::Procurement) {
    double value = 0.0;
    for (int i = 0; i < inst.n; ++i) {
      if (out.procured[i]) value += inst.procurement->item_values[i];
    }
    return value;
  }
  double revenue = 0.0;
  for (double p : out.payments) revenue += p;
  if (inst.setting == Setting::SellerUtility) return inst.seller_utility->at(revenue);
  return revenue;
}

DualSnapshot make_dual_snapshot(const Instance& inst) {
  DualSnapshot d;
  d.setting = inst.setting;
  const int n = inst.n;
  auto per_type = [&](int i) { return inst.types_of(i); };
  switch (inst.setting) {
    case Setting::MultiUnit:
      if (inst.correlated()) {
        d.alpha4.resize(n);
        d.beta3.resize(n);
        for (int i = 0; i < n; ++i) {
          d.alpha4[i].assign(
              per_type(i),
              std::vector<std::vector<double>>(per_type(i), std::vector<double>(inst.m + 1, 0.0)));
          d.beta3[i].assign(per_type(i), std::vector<double>(per_type(i), 0.0));
        }
      } else {
        d.alpha3.resize(n);
        d.beta2.resize(n);
        for (int i = 0; i < n; ++i) {
          d.alpha3[i].assign(per_type(i), std::vector<double>(inst.m + 1, 0.0));
          d.beta2[i].assign(per_type(i), 0.0);
        }
      }
      break;
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      d.alpha3.resize(n);
      d.beta2.resize(n);
      for (int i = 0; i < n; ++i) {
        d.alpha3[i].assign(per_type(i), std::vector<double>(per_type(i), 0.0));
        d.beta2[i].assign(per_type(i), 0.0);
      }
      break;
    case Setting::SellerUtility:
      d.alpha4.resize(n);
      for (int i = 0; i < n; ++i) {
        d.alpha4[i].assign(per_type(i), std::vector<std::vector<double>>(
                                            inst.payment_levels(),
                                            std::vector<double>(inst.m + 1, 0.0)));
      }
      break;
    case Setting::MultiItem:
      d.alpha3.resize(n);
      for (int i = 0; i < n; ++i) {
        d.alpha3[i].assign(per_type(i), std::vector<double>(inst.m, 0.0));
      }
      if (!inst.inequality_mode()) {
        d.beta2.resize(n);
        for (int i = 0; i < n; ++i) d.beta2[i].assign(per_type(i), 0.0);
      }
      break;
    case Setting::Procurement:
      d.alpha2.resize(n);
      d.beta2.resize(n);
      for (int i = 0; i < n; ++i) {
        d.alpha2[i].assign(per_type(i), 0.0);
        d.beta2[i].assign(per_type(i), 0.0);
      }
      break;
  }
  return d;
}

HolisticSolution make_holistic(const Instance& inst) {
  const DualSnapshot d = make_dual_snapshot(inst);
  HolisticSolution h;
  h.setting = inst.setting;
  h.x2 = d.alpha2;
  h.x3 = d.alpha3;
  h.x4 = d.alpha4;
  h.p2 = d.beta2;
  h.p3 = d.beta3;
  if (inst.inequality_mode()) {
    h.p2.resize(inst.n);
    for (int i = 0; i < inst.n; ++i) h.p2[i].assign(inst.types_of(i), 0.0);
  }
  return h;
}

}  // namespace auctions
