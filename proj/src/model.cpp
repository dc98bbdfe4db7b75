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

#include "auctions/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "auctions/errors.hpp"

namespace auctions {

namespace {

constexpr double kPmfSumTol = 1e-12;

std::string cell_name(int buyer, int type) {
  std::ostringstream os;
  os << "buyer " << buyer << " type " << type;
  return os.str();
}

}  // namespace

const char* to_string(Setting s) {
  switch (s) {
    case Setting::MultiUnit: return "multi_unit";
    case Setting::QuittingRights: return "quitting_rights";
    case Setting::SoftBudget: return "soft_budget";
    case Setting::SellerUtility: return "seller_utility";
    case Setting::MultiItem: return "multi_item";
    case Setting::Procurement: return "procurement";
  }
  return "unknown";
}

std::optional<Setting> setting_from_string(const std::string& s) {
  if (s == "multi_unit") return Setting::MultiUnit;
  if (s == "quitting_rights") return Setting::QuittingRights;
  if (s == "soft_budget") return Setting::SoftBudget;
  if (s == "seller_utility") return Setting::SellerUtility;
  if (s == "multi_item") return Setting::MultiItem;
  if (s == "procurement") return Setting::Procurement;
  return std::nullopt;
}

double Prior::joint_prob(const TypeVector& t) const {
  if (kind == Kind::IndependentProduct) {
    double p = 1.0;
    for (int i = 0; i < buyers(); ++i) p *= marginals[i][t[i]];
    return p;
  }
  for (const auto& e : support) {
    if (e.types == t) return e.prob;
  }
  return 0.0;
}

void Prior::derive_marginals(const std::vector<int>& type_counts) {
  marginals.assign(type_counts.size(), {});
  for (std::size_t i = 0; i < type_counts.size(); ++i) {
    marginals[i].assign(type_counts[i], 0.0);
  }
  for (const auto& e : support) {
    for (std::size_t i = 0; i < type_counts.size(); ++i) {
      marginals[i][e.types[i]] += e.prob;
    }
  }
}

double PiecewiseLinearCost::value(double p) const {
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (p <= breakpoints[k]) return acc + slopes[k] * (p - prev);
    acc += slopes[k] * (breakpoints[k] - prev);
    prev = breakpoints[k];
  }
  return acc + slopes.back() * (p - prev);
}

double PiecewiseLinearCost::inverse(double target) const {
  if (target <= 0.0) return 0.0;
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    const double seg = slopes[k] * (breakpoints[k] - prev);
    if (acc + seg >= target) return prev + (target - acc) / slopes[k];
    acc += seg;
    prev = breakpoints[k];
  }
  return prev + (target - acc) / slopes.back();
}

double SellerUtilityTable::at(double z) const {
  const double rounded = std::round(z);
  if (std::abs(z - rounded) > 1e-9) {
    if (!interpolate) {
      throw NonIntegerPayment("seller utility queried at non-integer revenue without interpolation");
    }
    const double lo = std::floor(z);
    const double w = z - lo;
    return (1.0 - w) * at(lo) + w * at(lo + 1.0);
  }
  const auto idx = static_cast<std::int64_t>(rounded) - z_min;
  if (idx < 0 || idx >= static_cast<std::int64_t>(values.size())) {
    throw NonIntegerPayment("seller utility queried outside the table range");
  }
  return values[static_cast<std::size_t>(idx)];
}

double Instance::budget_cap(int buyer, int type) const {
  if (!budgets.has_value()) return scale_bound;
  return std::min(budgets->resolve(buyer, type), scale_bound);
}

namespace {

void validate_prior(const Instance& inst, std::vector<std::string>& out) {
  const Prior& prior = inst.prior;
  const double min_marginal = 1.0 / inst.scale_bound;
  if (prior.kind == Prior::Kind::IndependentProduct) {
    for (int i = 0; i < inst.n; ++i) {
      double sum = 0.0;
      for (int t = 0; t < inst.types_of(i); ++t) {
        const double f = prior.marginals[i][t];
        if (f < 0.0) out.push_back("negative probability in pmf of buyer " + std::to_string(i));
        sum += f;
      }
      if (std::abs(sum - 1.0) > kPmfSumTol) {
        out.push_back("pmf of buyer " + std::to_string(i) + " sums to " + std::to_string(sum) +
                      ", expected 1");
      }
    }
  } else {
    double sum = 0.0;
    for (const auto& e : prior.support) {
      if (e.prob < 0.0) out.push_back("negative probability in joint pmf");
      sum += e.prob;
    }
    if (std::abs(sum - 1.0) > kPmfSumTol) {
      out.push_back("joint pmf sums to " + std::to_string(sum) + ", expected 1");
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.types_of(i); ++t) {
      if (prior.marginals[i][t] < min_marginal - 1e-15) {
        out.push_back("marginal probability of " + cell_name(i, t) + " is " +
                      std::to_string(prior.marginals[i][t]) + ", below 1/scale_bound = " +
                      std::to_string(min_marginal));
      }
    }
  }
  if (inst.correlated()) {
    // Correlated mode needs every conditional mu(t_i | t_-i) positive on the
    // support so z-ratios and misreport outcomes are well defined.
    for (const auto& e : prior.support) {
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          TypeVector probe = e.types;
          probe[i] = t;
          if (prior.joint_prob(probe) <= 0.0) {
            out.push_back("joint support is not conditionally full: mu(" + cell_name(i, t) +
                          " | others) = 0 on a positive-probability profile");
          }
        }
      }
    }
  }
}

void validate_multi_unit_values(const Instance& inst, std::vector<std::string>& out) {
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.types_of(i); ++t) {
      const auto& v = inst.unit_values[i][t];
      if (static_cast<int>(v.size()) != inst.m + 1) {
        out.push_back("valuation table of " + cell_name(i, t) + " must have m+1 entries");
        continue;
      }
      if (v[0] != 0.0) out.push_back("v(0, t) must be 0 for " + cell_name(i, t));
      for (int q = 0; q <= inst.m; ++q) {
        if (v[q] < 0.0) out.push_back("negative valuation for " + cell_name(i, t));
        if (std::abs(v[q]) > inst.scale_bound) {
          out.push_back("valuation exceeds scale_bound for " + cell_name(i, t));
        }
      }
    }
  }
}

void validate_budgets(const Instance& inst, std::vector<std::string>& out) {
  if (!inst.budgets.has_value()) return;
  for (int i = 0; i < inst.n; ++i) {
    const int tn = inst.budgets->kind == Budgets::Kind::Public ? 1 : inst.types_of(i);
    for (int t = 0; t < tn; ++t) {
      const double b = inst.budgets->resolve(i, t);
      if (b < 0.0) out.push_back("negative budget for buyer " + std::to_string(i));
      if (b > inst.scale_bound) {
        out.push_back("budget exceeds scale_bound for buyer " + std::to_string(i));
      }
    }
  }
}

void validate_soft_costs(const Instance& inst, std::vector<std::string>& out) {
  if (static_cast<int>(inst.soft_costs.size()) != inst.n) {
    out.push_back("soft_budget instances need one cost function per buyer");
    return;
  }
  for (int i = 0; i < inst.n; ++i) {
    const auto& c = inst.soft_costs[i];
    if (c.slopes.size() != c.breakpoints.size() + 1) {
      out.push_back("cost function of buyer " + std::to_string(i) +
                    " needs one more slope than breakpoints");
      continue;
    }
    for (double s : c.slopes) {
      if (s < 1.0) {
        out.push_back("cost function of buyer " + std::to_string(i) +
                      " has slope < 1, so c(p) - p is not monotone");
        break;
      }
    }
    for (std::size_t k = 0; k < c.breakpoints.size(); ++k) {
      if (c.breakpoints[k] <= 0.0 || (k > 0 && c.breakpoints[k] <= c.breakpoints[k - 1])) {
        out.push_back("breakpoints of buyer " + std::to_string(i) +
                      " must be positive and strictly increasing");
        break;
      }
    }
  }
}

void validate_seller_utility(const Instance& inst, std::vector<std::string>& out) {
  if (!inst.seller_utility.has_value()) {
    out.push_back("seller_utility instances need a seller utility table");
    return;
  }
  const auto& U = *inst.seller_utility;
  const auto need_lo = -static_cast<std::int64_t>(inst.n) * inst.scale_int();
  const auto need_hi = static_cast<std::int64_t>(inst.n) * inst.scale_int();
  if (U.z_min > need_lo || U.z_max() < need_hi) {
    out.push_back("seller utility table must cover integer revenues in [-n*L, n*L]");
  }
  if (std::abs(U.z_min) <= 0 || (U.z_min <= 0 && U.z_max() >= 0)) {
    const auto zero_idx = -U.z_min;
    if (zero_idx >= 0 && zero_idx < static_cast<std::int64_t>(U.values.size()) &&
        U.values[static_cast<std::size_t>(zero_idx)] != 0.0) {
      out.push_back("seller utility must satisfy U(0) = 0");
    }
  }
  for (std::size_t k = 1; k < U.values.size(); ++k) {
    if (U.values[k] < U.values[k - 1] - 1e-12) {
      out.push_back("seller utility table must be monotone non-decreasing");
      break;
    }
  }
  for (double v : U.values) {
    if (std::abs(v) > inst.scale_bound) {
      out.push_back("seller utility exceeds scale_bound");
      break;
    }
  }
  if (std::abs(inst.scale_bound - std::round(inst.scale_bound)) > 1e-12) {
    out.push_back("seller_utility instances need an integer scale_bound (payment grid)");
  }
  const int levels = inst.payment_levels();
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.types_of(i); ++t) {
      const auto& u = inst.buyer_utility[i][t];
      if (static_cast<int>(u.size()) != levels) {
        out.push_back("buyer utility table of " + cell_name(i, t) +
                      " must cover integer payments in [-L, L]");
        continue;
      }
      bool any_feasible = false;
      for (int pi = 0; pi < levels; ++pi) {
        if (static_cast<int>(u[pi].size()) != inst.m + 1) {
          out.push_back("buyer utility table of " + cell_name(i, t) + " must have m+1 columns");
          break;
        }
        for (int q = 0; q <= inst.m; ++q) {
          if (std::abs(u[pi][q]) > inst.scale_bound) {
            out.push_back("buyer utility exceeds scale_bound for " + cell_name(i, t));
          }
          if (u[pi][q] >= 0.0) any_feasible = true;
        }
      }
      if (!any_feasible) {
        out.push_back("no (p, q) pair with non-negative utility for " + cell_name(i, t));
      }
    }
  }
}

void validate_multi_item(const Instance& inst, std::vector<std::string>& out) {
  if (!inst.multi_item.has_value()) {
    out.push_back("multi_item instances need a multi_item block");
    return;
  }
  if (static_cast<int>(inst.multi_item->supply.size()) != inst.m) {
    out.push_back("multi_item supply must have one entry per item kind");
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.types_of(i); ++t) {
      const auto& v = inst.item_values[i][t];
      if (static_cast<int>(v.size()) != inst.m) {
        out.push_back("item valuation table of " + cell_name(i, t) + " must have m entries");
        continue;
      }
      double total = 0.0;
      for (double x : v) {
        if (x < 0.0) out.push_back("negative item valuation for " + cell_name(i, t));
        total += std::abs(x);
      }
      if (total > inst.scale_bound) {
        out.push_back("total valuation exceeds scale_bound for " + cell_name(i, t));
      }
    }
  }
  if (inst.multi_item->inequality_mode && inst.multi_item->envy_free) {
    out.push_back("inequality mode has no payment action variables; envy rows are unsupported");
  }
}

void validate_procurement(const Instance& inst, std::vector<std::string>& out) {
  if (!inst.procurement.has_value()) {
    out.push_back("procurement instances need a procurement block");
    return;
  }
  const auto& spec = *inst.procurement;
  if (std::abs(spec.budget - std::round(spec.budget)) > 1e-12 || spec.budget < 0 ||
      spec.budget > inst.scale_bound) {
    out.push_back("procurement budget must be an integer in [0, scale_bound]");
  }
  if (static_cast<int>(spec.item_values.size()) != inst.n) {
    out.push_back("procurement needs one item value per agent");
  }
  double total_value = 0.0;
  for (double v : spec.item_values) {
    if (v < 0.0) out.push_back("negative procurement item value");
    total_value += v;
  }
  if (total_value > inst.scale_bound) {
    out.push_back("total procurement value exceeds scale_bound");
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.types_of(i); ++t) {
      const double c = spec.costs[i][t];
      if (std::abs(c - std::round(c)) > 1e-12 || c < 0 || c > inst.scale_bound) {
        out.push_back("procurement cost of " + cell_name(i, t) +
                      " must be an integer in [0, scale_bound]");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.n <= 0) out.push_back("instance needs at least one buyer");
  if (inst.scale_bound <= 0.0) out.push_back("scale_bound must be positive");
  if (static_cast<int>(inst.type_labels.size()) != inst.n) {
    out.push_back("type_labels must have one list per buyer");
    return out;
  }
  for (int i = 0; i < inst.n; ++i) {
    if (inst.type_labels[i].empty()) {
      out.push_back("buyer " + std::to_string(i) + " has an empty type space");
      return out;
    }
  }
  if (inst.scale_bound <= 0.0) return out;

  validate_prior(inst, out);
  switch (inst.setting) {
    case Setting::MultiUnit:
    case Setting::QuittingRights:
      validate_multi_unit_values(inst, out);
      validate_budgets(inst, out);
      break;
    case Setting::SoftBudget:
      validate_multi_unit_values(inst, out);
      validate_soft_costs(inst, out);
      break;
    case Setting::SellerUtility:
      validate_seller_utility(inst, out);
      break;
    case Setting::MultiItem:
      validate_multi_item(inst, out);
      validate_budgets(inst, out);
      break;
    case Setting::Procurement:
      validate_procurement(inst, out);
      break;
  }
  if (inst.setting != Setting::MultiUnit && inst.prior.kind == Prior::Kind::ExplicitJoint &&
      inst.n > 1) {
    out.push_back("correlated (explicit joint) priors are supported for multi_unit only");
  }
  if (inst.private_budgets() && inst.setting != Setting::MultiUnit) {
    out.push_back("private budgets are supported for multi_unit only");
  }
  return out;
}

TypeVector sample_type_vector(const Prior& prior, RngStream& rng) {
  if (prior.kind == Prior::Kind::IndependentProduct) {
    TypeVector t(prior.buyers());
    for (int i = 0; i < prior.buyers(); ++i) {
      t[i] = rng.next_index(prior.marginals[i]);
    }
    return t;
  }
  const double u = rng.next_unit();
  double acc = 0.0;
  for (const auto& e : prior.support) {
    acc += e.prob;
    if (u < acc) return e.types;
  }
  return prior.support.back().types;
}

std::vector<JointEntry> enumerate_joint_types(const Prior& prior, std::size_t cap) {
  if (prior.kind == Prior::Kind::ExplicitJoint) {
    if (prior.support.size() > cap) {
      throw CapExceeded("joint support larger than the enumeration cap");
    }
    return prior.support;
  }
  std::size_t total = 1;
  for (int i = 0; i < prior.buyers(); ++i) {
    const std::size_t k = prior.marginals[i].size();
    if (total > cap / k) throw CapExceeded("joint type space larger than the enumeration cap");
    total *= k;
  }
  std::vector<JointEntry> out;
  out.reserve(total);
  TypeVector t(prior.buyers(), 0);
  while (true) {
    double p = 1.0;
    for (int i = 0; i < prior.buyers(); ++i) p *= prior.marginals[i][t[i]];
    if (p > 0.0) out.push_back({t, p});
    int i = prior.buyers() - 1;
    while (i >= 0) {
      if (++t[i] < static_cast<int>(prior.marginals[i].size())) break;
      t[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

double conditional_ratio(const Prior& prior, int buyer, int t_num, int t_den,
                         const TypeVector& others) {
  if (prior.kind == Prior::Kind::IndependentProduct) {
    const double denom = prior.marginals[buyer][t_den];
    if (denom <= 0.0) throw ZeroConditional("marginal of the denominator type is zero");
    return prior.marginals[buyer][t_num] / denom;
  }
  TypeVector probe = others;
  probe[buyer] = t_num;
  const double num = prior.joint_prob(probe);
  probe[buyer] = t_den;
  const double den = prior.joint_prob(probe);
  if (den <= 0.0) throw ZeroConditional("conditional probability of the denominator type is zero");
  return num / den;
}

WidthParams compute_width_params(const Instance& inst) {
  WidthParams w;
  auto bump = [&w](double v) { w.l_effective = std::max(w.l_effective, std::abs(v)); };

  switch (inst.setting) {
    case Setting::MultiUnit:
    case Setting::QuittingRights:
    case Setting::SoftBudget:
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          for (double v : inst.unit_values[i][t]) bump(v);
          if (inst.budgets.has_value()) bump(inst.budgets->resolve(i, t));
        }
      }
      break;
    case Setting::SellerUtility:
      bump(static_cast<double>(inst.scale_int()));  // payments span [-L, L]
      for (double v : inst.seller_utility->values) bump(v);
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          for (const auto& row : inst.buyer_utility[i][t]) {
            for (double v : row) bump(v);
          }
        }
      }
      break;
    case Setting::MultiItem:
      for (int i = 0; i < inst.n; ++i) {
        for (int t = 0; t < inst.types_of(i); ++t) {
          double total = 0.0;
          for (double v : inst.item_values[i][t]) total += std::abs(v);
          bump(total);
          if (inst.budgets.has_value()) bump(inst.budgets->resolve(i, t));
        }
      }
      break;
    case Setting::Procurement: {
      bump(inst.procurement->budget);
      double total = 0.0;
      for (double v : inst.procurement->item_values) total += v;
      bump(total);
      break;
    }
  }

  // Largest marginal ratio; for explicit joints the largest conditional ratio
  // over the support.
  w.z_max = 1.0;
  if (inst.prior.kind == Prior::Kind::IndependentProduct) {
    for (int i = 0; i < inst.n; ++i) {
      for (int a = 0; a < inst.types_of(i); ++a) {
        for (int b = 0; b < inst.types_of(i); ++b) {
          if (inst.prior.marginals[i][b] > 0.0) {
            w.z_max = std::max(w.z_max, inst.prior.marginals[i][a] / inst.prior.marginals[i][b]);
          }
        }
      }
    }
  } else {
    for (const auto& e : inst.prior.support) {
      for (int i = 0; i < inst.n; ++i) {
        for (int a = 0; a < inst.types_of(i); ++a) {
          for (int b = 0; b < inst.types_of(i); ++b) {
            TypeVector probe = e.types;
            probe[i] = b;
            if (inst.prior.joint_prob(probe) <= 0.0) continue;
            w.z_max = std::max(w.z_max, conditional_ratio(inst.prior, i, a, b, e.types));
          }
        }
      }
    }
  }
  return w;
}

}  // namespace auctions
