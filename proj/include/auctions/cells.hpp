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

#include <vector>

#include "auctions/model.hpp"
#include "auctions/outcomes.hpp"

namespace auctions {

// The expectation-coupling constraints pair one holistic variable with one
// per-sample statistic. A "cell" names one such pair; the flat cell order
// below is the canonical indexing shared by the constraint system, the
// holistic LP, mechanism files, and the verifier.

/// Allocation-side cell (alpha multipliers). Index meaning by setting:
///   MultiUnit:         (i, t, -,      q)
///   Quitting/Soft:     (i, t_rep, t_true, -)
///   Seller utility:    (i, t, -,      p_idx * (m+1) + q)
///   MultiItem:         (i, t, -,      j)
///   Procurement:       (i, t, -,      -)
///   Correlated:        (i, t_true, t_rep, q)
struct XCell {
  int i = 0;
  int t = 0;
  int t2 = -1;
  int sub = -1;
};

/// Payment-side cell (beta multipliers): (i, t) or (i, t_true, t_rep).
struct PCell {
  int i = 0;
  int t = 0;
  int t2 = -1;
};

struct CellLayout {
  Setting setting = Setting::MultiUnit;
  bool correlated = false;
  bool inequality = false;
  std::vector<XCell> x_cells;
  std::vector<PCell> p_cells;
  bool has_value_row = false;  // seller utility / procurement objective row
  // Inequality mode keeps interim payment variables in the holistic LP even
  // though they have no per-sample counterpart; indexed like p2.
  int extra_payment_vars = 0;

  int x_count() const { return static_cast<int>(x_cells.size()); }
  int p_count() const { return static_cast<int>(p_cells.size()); }
  int var_count() const { return x_count() + p_count() + extra_payment_vars; }
};

CellLayout make_cell_layout(const Instance& inst);

/// The reported type of the cell's buyer (the sample-partition key).
int x_cell_reported_type(const CellLayout& layout, const XCell& cell);
int p_cell_reported_type(const CellLayout& layout, const PCell& cell);

/// Per-sample statistic of a cell, evaluated on one realization whose
/// reported vector is `t` (must have t[i] equal to the cell's reported
/// type). Correlated cells carry their z-ratio and marginal-ratio weights.
double x_cell_sample_value(const Instance& inst, const CellLayout& layout, const XCell& cell,
                           const TypeVector& t, const Outcome& out);
double p_cell_sample_value(const Instance& inst, const CellLayout& layout, const PCell& cell,
                           const TypeVector& t, const Outcome& out);

struct CellBox {
  double lo = 0.0;
  double hi = 1.0;
};

/// Box containing both the holistic variable and the per-sample statistic;
/// used for LP bounds and constraint-row widths.
CellBox x_cell_box(const Instance& inst, const CellLayout& layout, const XCell& cell);
CellBox p_cell_box(const Instance& inst, const CellLayout& layout, const PCell& cell);

/// Bound on |holistic - sample statistic| for the cell's coupling rows.
double x_cell_width(const Instance& inst, const CellLayout& layout, const XCell& cell);
double p_cell_width(const Instance& inst, const CellLayout& layout, const PCell& cell);

// Flat accessors into the shaped tables.
double holistic_get(const HolisticSolution& h, const CellLayout& layout, int var);
void holistic_set(HolisticSolution& h, const CellLayout& layout, int var, double value);
double dual_get(const DualSnapshot& d, const CellLayout& layout, int var);
void dual_set(DualSnapshot& d, const CellLayout& layout, int var, double value);

/// Marginal prior probability of the cell's (buyer, type) pair used by the
/// f-weighted holistic objective. For correlated cells this is f_i(t_true).
double cell_marginal(const Instance& inst, const CellLayout& layout, int var);

}  // namespace auctions
