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
#include <optional>
#include <string>
#include <vector>

#include "auctions/rng.hpp"

namespace auctions {

enum class Setting {
  MultiUnit,       // m homogeneous items, valuation over quantity, hard budgets
  QuittingRights,  // buyers may reject the outcome ex post
  SoftBudget,      // paying p costs the buyer c(p) >= p (piecewise linear)
  SellerUtility,   // non-linear seller utility over revenue, table-based buyer utilities
  MultiItem,       // m divisible item kinds, additive valuations, polytope constraints
  Procurement      // auctioneer buys items from agents under a hard budget
};

const char* to_string(Setting s);
std::optional<Setting> setting_from_string(const std::string& s);

/// Dense per-buyer type indices for one realization's reported types.
using TypeVector = std::vector<std::int32_t>;

struct JointEntry {
  TypeVector types;
  double prob = 0.0;
};

/// Common prior over the joint type space. Either a product of per-buyer
/// marginals or an explicit sparse joint pmf.
struct Prior {
  enum class Kind { IndependentProduct, ExplicitJoint };

  Kind kind = Kind::IndependentProduct;
  /// Per-buyer marginal pmfs. For ExplicitJoint these are derived from the
  /// support at load time and kept for fast conditional queries.
  std::vector<std::vector<double>> marginals;
  /// Sparse support, ExplicitJoint only; entries with prob > 0.
  std::vector<JointEntry> support;

  int buyers() const { return static_cast<int>(marginals.size()); }
  int types_of(int buyer) const { return static_cast<int>(marginals[buyer].size()); }
  double marginal(int buyer, int type) const { return marginals[buyer][type]; }

  /// Probability of a full type vector (0 if outside the support).
  double joint_prob(const TypeVector& t) const;

  /// Recompute `marginals` from `support` (ExplicitJoint).
  void derive_marginals(const std::vector<int>& type_counts);
};

/// Piecewise-linear cost of arranging a payment, c(0) = 0, slopes >= 1 so
/// that c(p) - p is monotone non-decreasing and c is strictly increasing.
struct PiecewiseLinearCost {
  std::vector<double> breakpoints;  // strictly increasing, all > 0
  std::vector<double> slopes;       // breakpoints.size() + 1 entries

  double value(double p) const;
  /// Largest p with value(p) <= target (target >= 0).
  double inverse(double target) const;
};

/// Monotone seller utility over integer revenue, stored as a dense table
/// on [z_min, z_min + values.size() - 1].
struct SellerUtilityTable {
  std::int64_t z_min = 0;
  std::vector<double> values;
  bool interpolate = false;  // opt-in linear interpolation off the grid

  double at(double z) const;
  std::int64_t z_max() const { return z_min + static_cast<std::int64_t>(values.size()) - 1; }
};

struct Budgets {
  enum class Kind { Public, Private };

  Kind kind = Kind::Public;
  std::vector<double> public_values;                // [i]
  std::vector<std::vector<double>> private_values;  // [i][t]

  double resolve(int buyer, int type) const {
    return kind == Kind::Public ? public_values[buyer] : private_values[buyer][type];
  }
};

/// Extra linear constraint over one realization's (x, p) variables for the
/// multi-item setting: sum_ij cx[i][j] x_ij + sum_i cp[i] p_i (rel) rhs.
struct PolytopeRow {
  std::vector<std::vector<double>> x_coeffs;  // [i][j]
  std::vector<double> p_coeffs;               // [i]
  char rel = '<';                             // '<' (<=), '>' (>=), '=' (==)
  double rhs = 0.0;
};

struct MultiItemSpec {
  std::vector<double> supply;          // per item kind, default 1
  bool envy_free = false;              // add pairwise envy-freeness rows to F(t)
  bool inequality_mode = false;        // allocation-only EQ inequalities, all-pay fix
  std::vector<PolytopeRow> extra_rows;
};

struct ProcurementSpec {
  double budget = 0.0;                     // auctioneer's hard budget B (integer)
  std::vector<double> item_values;         // value of agent i's item
  std::vector<std::vector<double>> costs;  // [i][t], integers in {0..L}
};

/// A full auction problem. Immutable after construction; safe to share
/// across threads.
struct Instance {
  Setting setting = Setting::MultiUnit;
  int n = 0;                  // buyers (or agents for procurement)
  int m = 0;                  // items (or item kinds)
  double scale_bound = 0.0;   // global magnitude bound on money/utility quantities
  std::vector<std::vector<std::string>> type_labels;  // [i][t]
  Prior prior;

  // Multi-unit family: valuation of buyer i with type t for q items, q in 0..m.
  std::vector<std::vector<std::vector<double>>> unit_values;  // [i][t][q]
  // Multi-item: per-item valuations. [i][t][j]
  std::vector<std::vector<std::vector<double>>> item_values;

  std::optional<Budgets> budgets;                 // absent => scale_bound for everyone
  std::vector<PiecewiseLinearCost> soft_costs;    // SoftBudget, one per buyer
  std::optional<SellerUtilityTable> seller_utility;
  // SellerUtility: buyer utilities u_i(p, q, t). [i][t][p_index][q], p = p_index - L.
  std::vector<std::vector<std::vector<std::vector<double>>>> buyer_utility;
  std::optional<MultiItemSpec> multi_item;
  std::optional<ProcurementSpec> procurement;

  int types_of(int buyer) const { return static_cast<int>(type_labels[buyer].size()); }
  std::int64_t scale_int() const { return static_cast<std::int64_t>(scale_bound + 0.5); }
  int payment_levels() const { return static_cast<int>(2 * scale_int() + 1); }
  int payment_of_index(int p_index) const { return p_index - static_cast<int>(scale_int()); }
  int index_of_payment(int p) const { return p + static_cast<int>(scale_int()); }

  /// Resolved budget, capped at the scale bound.
  double budget_cap(int buyer, int type) const;
  bool private_budgets() const {
    return budgets.has_value() && budgets->kind == Budgets::Kind::Private;
  }
  /// Explicit-joint multi-unit instances run in correlated mode.
  bool correlated() const {
    return setting == Setting::MultiUnit && prior.kind == Prior::Kind::ExplicitJoint && n > 1;
  }
  bool inequality_mode() const {
    return multi_item.has_value() && multi_item->inequality_mode;
  }
  double buyer_utility_at(int buyer, int type, int payment, int q) const {
    return buyer_utility[buyer][type][index_of_payment(payment)][q];
  }
};

/// Returns every invariant violation as a human-readable description;
/// empty means the instance is valid.
std::vector<std::string> validate_instance(const Instance& inst);

/// Draw a type vector from the prior. Deterministic given the stream state.
TypeVector sample_type_vector(const Prior& prior, RngStream& rng);

/// All type vectors with positive probability. Throws CapExceeded if the
/// joint space exceeds `cap` entries.
std::vector<JointEntry> enumerate_joint_types(const Prior& prior, std::size_t cap = 1000000);

/// z-ratio mu(t_num | t_others) / mu(t_den | t_others) for one buyer.
/// `others` must have length n; the entry at `buyer` is ignored.
/// Throws ZeroConditional when the denominator conditional is zero.
double conditional_ratio(const Prior& prior, int buyer, int t_num, int t_den,
                         const TypeVector& others);

struct WidthParams {
  double l_effective = 0.0;  // max payment/valuation/utility magnitude actually present
  double z_max = 1.0;        // max conditional-probability ratio over the support
};

WidthParams compute_width_params(const Instance& inst);

}  // namespace auctions
