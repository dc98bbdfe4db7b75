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

#include "auctions/cells.hpp"

#include <algorithm>
#include <stdexcept>

namespace auctions {

CellLayout make_cell_layout(const Instance& inst) {
  CellLayout layout;
  layout.setting = inst.setting;
  layout.correlated = inst.correlated();
  layout.inequality = inst.inequality_mode();

  for (int i = 0; i < inst.n; ++i) {
    const int tn = inst.types_of(i);
    switch (inst.setting) {
      case Setting::MultiUnit:
        if (layout.correlated) {
          for (int a = 0; a < tn; ++a) {
            for (int b = 0; b < tn; ++b) {
              for (int q = 0; q <= inst.m; ++q) layout.x_cells.push_back({i, a, b, q});
              layout.p_cells.push_back({i, a, b});
            }
          }
        } else {
          for (int t = 0; t < tn; ++t) {
            for (int q = 0; q <= inst.m; ++q) layout.x_cells.push_back({i, t, -1, q});
            layout.p_cells.push_back({i, t, -1});
          }
        }
        break;
      case Setting::QuittingRights:
      case Setting::SoftBudget:
        for (int t = 0; t < tn; ++t) {
          for (int u = 0; u < tn; ++u) layout.x_cells.push_back({i, t, u, -1});
          layout.p_cells.push_back({i, t, -1});
        }
        break;
      case Setting::SellerUtility:
        for (int t = 0; t < tn; ++t) {
          for (int p = 0; p < inst.payment_levels(); ++p) {
            for (int q = 0; q <= inst.m; ++q) {
              layout.x_cells.push_back({i, t, -1, p * (inst.m + 1) + q});
            }
          }
        }
        break;
      case Setting::MultiItem:
        for (int t = 0; t < tn; ++t) {
          for (int j = 0; j < inst.m; ++j) layout.x_cells.push_back({i, t, -1, j});
          if (!layout.inequality) layout.p_cells.push_back({i, t, -1});
        }
        break;
      case Setting::Procurement:
        for (int t = 0; t < tn; ++t) {
          layout.x_cells.push_back({i, t, -1, -1});
          layout.p_cells.push_back({i, t, -1});
        }
        break;
    }
  }
  layout.has_value_row =
      inst.setting == Setting::SellerUtility || inst.setting == Setting::Procurement;
  if (layout.inequality) {
    int count = 0;
    for (int i = 0; i < inst.n; ++i) count += inst.types_of(i);
    layout.extra_payment_vars = count;
  }
  return layout;
}

int x_cell_reported_type(const CellLayout& layout, const XCell& cell) {
  return layout.correlated ? cell.t2 : cell.t;
}

int p_cell_reported_type(const CellLayout& layout, const PCell& cell) {
  return layout.correlated ? cell.t2 : cell.t;
}

namespace {

double correlated_weight(const Instance& inst, int i, int t_true, int t_rep,
                         const TypeVector& t) {
  const double ratio =
      inst.prior.marginal(i, t_rep) / inst.prior.marginal(i, t_true);
  return ratio * conditional_ratio(inst.prior, i, t_true, t_rep, t);
}

}  // namespace

double x_cell_sample_value(const Instance& inst, const CellLayout& layout, const XCell& cell,
                           const TypeVector& t, const Outcome& out) {
  switch (inst.setting) {
    case Setting::MultiUnit:
      if (layout.correlated) {
        const double ind = out.quantities[cell.i] == cell.sub ? 1.0 : 0.0;
        if (ind == 0.0) return 0.0;
        return correlated_weight(inst, cell.i, cell.t, cell.t2, t);
      }
      return out.quantities[cell.i] == cell.sub ? 1.0 : 0.0;
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      return realized_utility(inst, cell.i, cell.t2, out);
    case Setting::SellerUtility: {
      const int p_idx = cell.sub / (inst.m + 1);
      const int q = cell.sub % (inst.m + 1);
      return (out.quantities[cell.i] == q &&
              inst.index_of_payment(static_cast<int>(out.payments[cell.i])) == p_idx)
                 ? 1.0
                 : 0.0;
    }
    case Setting::MultiItem:
      return out.fractions[cell.i][cell.sub];
    case Setting::Procurement:
      return out.procured[cell.i] ? 1.0 : 0.0;
  }
  return 0.0;
}

double p_cell_sample_value(const Instance& inst, const CellLayout& layout, const PCell& cell,
                           const TypeVector& t, const Outcome& out) {
  if (layout.correlated) {
    return correlated_weight(inst, cell.i, cell.t, cell.t2, t) * out.payments[cell.i];
  }
  return out.payments[cell.i];
}

namespace {

double correlated_cell_scale(const Instance& inst, int i, int t_true, int t_rep) {
  // f-ratio times the largest z over the support.
  const double ratio = inst.prior.marginal(i, t_rep) / inst.prior.marginal(i, t_true);
  double zmax = 0.0;
  for (const auto& e : inst.prior.support) {
    if (e.types[i] != t_rep) continue;
    zmax = std::max(zmax, conditional_ratio(inst.prior, i, t_true, t_rep, e.types));
  }
  return std::max(1.0, ratio * zmax);
}

double max_valuation(const Instance& inst, int i, int t) {
  double vmax = 0.0;
  for (double v : inst.unit_values[i][t]) vmax = std::max(vmax, v);
  return vmax;
}

}  // namespace

CellBox x_cell_box(const Instance& inst, const CellLayout& layout, const XCell& cell) {
  switch (inst.setting) {
    case Setting::MultiUnit:
      if (layout.correlated) return {0.0, correlated_cell_scale(inst, cell.i, cell.t, cell.t2)};
      return {0.0, 1.0};
    case Setting::QuittingRights:
      return {0.0, inst.scale_bound};
    case Setting::SoftBudget:
      return {-inst.scale_bound, inst.scale_bound};
    case Setting::SellerUtility:
    case Setting::MultiItem:
    case Setting::Procurement:
      return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

CellBox p_cell_box(const Instance& inst, const CellLayout& layout, const PCell& cell) {
  switch (inst.setting) {
    case Setting::MultiUnit: {
      if (layout.correlated) {
        return {0.0, correlated_cell_scale(inst, cell.i, cell.t, cell.t2) *
                         inst.budget_cap(cell.i, cell.t2)};
      }
      return {0.0, std::min(inst.budget_cap(cell.i, cell.t), max_valuation(inst, cell.i, cell.t))};
    }
    case Setting::QuittingRights:
      return {0.0, std::min(inst.budget_cap(cell.i, cell.t), max_valuation(inst, cell.i, cell.t))};
    case Setting::SoftBudget:
      return {0.0, inst.soft_costs[cell.i].inverse(max_valuation(inst, cell.i, cell.t))};
    case Setting::SellerUtility:
      return {-static_cast<double>(inst.scale_int()), static_cast<double>(inst.scale_int())};
    case Setting::MultiItem:
      return {0.0, inst.budget_cap(cell.i, cell.t)};
    case Setting::Procurement:
      return {0.0, inst.procurement->budget};
  }
  return {0.0, inst.scale_bound};
}

double x_cell_width(const Instance& inst, const CellLayout& layout, const XCell& cell) {
  // Utility cells span [-L, L] in the worst case; the others match the box.
  if (inst.setting == Setting::QuittingRights || inst.setting == Setting::SoftBudget) {
    return 2.0 * inst.scale_bound;
  }
  const CellBox box = x_cell_box(inst, layout, cell);
  return box.hi - box.lo;
}

double p_cell_width(const Instance& inst, const CellLayout& layout, const PCell& cell) {
  const CellBox box = p_cell_box(inst, layout, cell);
  return box.hi - box.lo;
}

namespace {

const XCell& x_of(const CellLayout& layout, int var) { return layout.x_cells[var]; }
const PCell& p_of(const CellLayout& layout, int var) {
  return layout.p_cells[var - layout.x_count()];
}
bool is_p(const CellLayout& layout, int var) {
  return var >= layout.x_count() && var < layout.x_count() + layout.p_count();
}
bool is_extra(const CellLayout& layout, int var) {
  return var >= layout.x_count() + layout.p_count();
}

}  // namespace

double holistic_get(const HolisticSolution& h, const CellLayout& layout, int var) {
  if (is_extra(layout, var)) {
    int rem = var - layout.x_count() - layout.p_count();
    for (std::size_t i = 0; i < h.p2.size(); ++i) {
      if (rem < static_cast<int>(h.p2[i].size())) return h.p2[i][rem];
      rem -= static_cast<int>(h.p2[i].size());
    }
    throw std::out_of_range("holistic_get: bad extra payment index");
  }
  if (is_p(layout, var)) {
    const PCell& c = p_of(layout, var);
    return layout.correlated ? h.p3[c.i][c.t][c.t2] : h.p2[c.i][c.t];
  }
  const XCell& c = x_of(layout, var);
  switch (layout.setting) {
    case Setting::MultiUnit:
      return layout.correlated ? h.x4[c.i][c.t][c.t2][c.sub] : h.x3[c.i][c.t][c.sub];
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      return h.x3[c.i][c.t][c.t2];
    case Setting::SellerUtility: {
      const int cols = static_cast<int>(h.x4[c.i][c.t].back().size());
      return h.x4[c.i][c.t][c.sub / cols][c.sub % cols];
    }
    case Setting::MultiItem:
      return h.x3[c.i][c.t][c.sub];
    case Setting::Procurement:
      return h.x2[c.i][c.t];
  }
  return 0.0;
}

void holistic_set(HolisticSolution& h, const CellLayout& layout, int var, double value) {
  if (is_extra(layout, var)) {
    int rem = var - layout.x_count() - layout.p_count();
    for (std::size_t i = 0; i < h.p2.size(); ++i) {
      if (rem < static_cast<int>(h.p2[i].size())) {
        h.p2[i][rem] = value;
        return;
      }
      rem -= static_cast<int>(h.p2[i].size());
    }
    throw std::out_of_range("holistic_set: bad extra payment index");
  }
  if (is_p(layout, var)) {
    const PCell& c = p_of(layout, var);
    (layout.correlated ? h.p3[c.i][c.t][c.t2] : h.p2[c.i][c.t]) = value;
    return;
  }
  const XCell& c = x_of(layout, var);
  switch (layout.setting) {
    case Setting::MultiUnit:
      (layout.correlated ? h.x4[c.i][c.t][c.t2][c.sub] : h.x3[c.i][c.t][c.sub]) = value;
      break;
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      h.x3[c.i][c.t][c.t2] = value;
      break;
    case Setting::SellerUtility: {
      const int cols = static_cast<int>(h.x4[c.i][c.t].back().size());
      h.x4[c.i][c.t][c.sub / cols][c.sub % cols] = value;
      break;
    }
    case Setting::MultiItem:
      h.x3[c.i][c.t][c.sub] = value;
      break;
    case Setting::Procurement:
      h.x2[c.i][c.t] = value;
      break;
  }
}

double dual_get(const DualSnapshot& d, const CellLayout& layout, int var) {
  if (is_extra(layout, var)) return 0.0;  // interim payments without sample rows
  if (is_p(layout, var)) {
    const PCell& c = p_of(layout, var);
    return layout.correlated ? d.beta3[c.i][c.t][c.t2] : d.beta2[c.i][c.t];
  }
  const XCell& c = x_of(layout, var);
  switch (layout.setting) {
    case Setting::MultiUnit:
      return layout.correlated ? d.alpha4[c.i][c.t][c.t2][c.sub] : d.alpha3[c.i][c.t][c.sub];
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      return d.alpha3[c.i][c.t][c.t2];
    case Setting::SellerUtility: {
      const int cols = static_cast<int>(d.alpha4[c.i][c.t].back().size());
      return d.alpha4[c.i][c.t][c.sub / cols][c.sub % cols];
    }
    case Setting::MultiItem:
      return d.alpha3[c.i][c.t][c.sub];
    case Setting::Procurement:
      return d.alpha2[c.i][c.t];
  }
  return 0.0;
}

void dual_set(DualSnapshot& d, const CellLayout& layout, int var, double value) {
  if (is_extra(layout, var)) return;
  if (is_p(layout, var)) {
    const PCell& c = p_of(layout, var);
    (layout.correlated ? d.beta3[c.i][c.t][c.t2] : d.beta2[c.i][c.t]) = value;
    return;
  }
  const XCell& c = x_of(layout, var);
  switch (layout.setting) {
    case Setting::MultiUnit:
      (layout.correlated ? d.alpha4[c.i][c.t][c.t2][c.sub] : d.alpha3[c.i][c.t][c.sub]) = value;
      break;
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      d.alpha3[c.i][c.t][c.t2] = value;
      break;
    case Setting::SellerUtility: {
      const int cols = static_cast<int>(d.alpha4[c.i][c.t].back().size());
      d.alpha4[c.i][c.t][c.sub / cols][c.sub % cols] = value;
      break;
    }
    case Setting::MultiItem:
      d.alpha3[c.i][c.t][c.sub] = value;
      break;
    case Setting::Procurement:
      d.alpha2[c.i][c.t] = value;
      break;
  }
}

double cell_marginal(const Instance& inst, const CellLayout& layout, int var) {
  if (is_extra(layout, var)) {
    int rem = var - layout.x_count() - layout.p_count();
    for (int i = 0; i < inst.n; ++i) {
      if (rem < inst.types_of(i)) return inst.prior.marginal(i, rem);
      rem -= inst.types_of(i);
    }
    throw std::out_of_range("cell_marginal: bad extra payment index");
  }
  if (is_p(layout, var)) {
    const PCell& c = p_of(layout, var);
    return inst.prior.marginal(c.i, c.t);
  }
  const XCell& c = x_of(layout, var);
  return inst.prior.marginal(c.i, c.t);
}

}  // namespace auctions
