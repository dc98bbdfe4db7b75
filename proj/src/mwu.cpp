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

#include "auctions/mwu.hpp"

#include <algorithm>
#include <stdexcept>

#include "auctions/errors.hpp"

namespace auctions::mwu {

namespace {

void normalize_log_weights(std::vector<double>& lw) {
  double mx = lw[0];
  for (double v : lw) mx = std::max(mx, v);
  double sum = 0.0;
  for (double v : lw) sum += std::exp(v - mx);
  const double lse = mx + std::log(sum);
  for (double& v : lw) v -= lse;
}

}  // namespace

ExpertState ExpertState::initial(int rows, double width, double epsilon) {
  ExpertState s;
  s.log_weights.assign(rows, 0.0);
  s.width = width;
  s.epsilon = epsilon;
  return s;
}

std::vector<double> ExpertState::weights(bool normalized) const {
  std::vector<double> w(log_weights.size());
  if (normalized) {
    double mx = log_weights[0];
    for (double v : log_weights) mx = std::max(mx, v);
    double sum = 0.0;
    for (double v : log_weights) sum += std::exp(v - mx);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = std::exp(log_weights[i] - mx) / sum;
    }
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights[i]);
  }
  return w;
}

ExpertState update_weights(const ExpertState& state, std::span<const double> violations,
                           bool normalize) {
  if (violations.size() != state.log_weights.size()) {
    throw DimensionMismatch("violation vector does not match the expert count");
  }
  ExpertState next = state;
  const double log_down = std::log1p(-state.epsilon);  // M >= 0
  const double log_up = std::log1p(state.epsilon);     // M < 0
  const double tol = 1e-9 * (1.0 + state.width);
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const double m = violations[i];
    if (std::abs(m) > state.width + tol) {
      throw WidthViolation("observed violation " + std::to_string(m) + " exceeds width " +
                           std::to_string(state.width));
    }
    const double scaled = m / state.width;
    next.log_weights[i] += m >= 0.0 ? scaled * log_down : -scaled * log_up;
  }
  if (normalize) normalize_log_weights(next.log_weights);
  next.round = state.round + 1;
  return next;
}

MwuTranscript run_generalized_ahk(const EngineConfig& config, const RoundSupplier& supplier,
                                  const RoundOracle& oracle) {
  if (config.rows <= 0 || config.max_rounds < 1 || config.width <= 0.0 ||
      config.epsilon <= 0.0 || config.epsilon >= 0.5) {
    throw std::invalid_argument("run_generalized_ahk: need rows > 0, K >= 1, width > 0, eps in (0, 1/2)");
  }
  ExpertState state = ExpertState::initial(config.rows, config.width, config.epsilon);
  MwuTranscript out;
  out.violation_sums.assign(config.rows, 0.0);

  std::vector<double> m(config.rows, 0.0);
  for (int round = 0; round < config.max_rounds; ++round) {
    RoundConstraints constraints = supplier(round);
    if (static_cast<int>(constraints.rows.size()) != config.rows) {
      throw DimensionMismatch("round supplied a different number of rows than configured");
    }
    const std::vector<double> w = state.weights(config.normalize);
    OracleResult res = oracle(constraints, w);

    double rhs_dot = 0.0;
    for (int i = 0; i < config.rows; ++i) rhs_dot += w[i] * constraints.rows[i].rhs;
    if (res.value < rhs_dot - 1e-9 * (1.0 + std::abs(rhs_dot))) {
      out.status = MwuTranscript::Status::DeclaredInfeasible;
      out.infeasible_round = round;
      out.final_weights = w;
      return out;
    }

    for (int i = 0; i < config.rows; ++i) {
      m[i] = constraints.rows[i].lhs(res.solution) - constraints.rows[i].rhs;
      const double cap = constraints.rows[i].width;
      if (std::abs(m[i]) > cap + 1e-9 * (1.0 + cap)) {
        throw WidthViolation("row " + std::to_string(i) + " violated its width bound");
      }
      out.violation_sums[i] += m[i];
    }
    state = update_weights(state, m, config.normalize);
    ++out.rounds_run;
    if (config.store_violations) out.violations.push_back(m);
    if (config.store_solutions) out.solutions.push_back(std::move(res.solution));

    if (config.early_stop.has_value() && out.rounds_run >= config.early_stop->min_rounds &&
        (out.rounds_run % std::max(1, config.early_stop->check_every)) == 0) {
      bool ok = true;
      for (int i = 0; i < config.rows && ok; ++i) {
        ok = out.violation_sums[i] / out.rounds_run >= -config.early_stop->per_row_target[i];
      }
      if (ok) {
        out.stopped_early = true;
        break;
      }
    }
  }
  out.status = MwuTranscript::Status::Completed;
  out.final_weights = state.weights(config.normalize);
  return out;
}

std::vector<double> average_violation(const MwuTranscript& transcript) {
  if (transcript.rounds_run == 0 || transcript.status != MwuTranscript::Status::Completed) {
    throw IncompleteTranscript("average_violation needs a completed transcript");
  }
  std::vector<double> avg(transcript.violation_sums.size());
  for (std::size_t i = 0; i < avg.size(); ++i) {
    avg[i] = transcript.violation_sums[i] / transcript.rounds_run;
  }
  return avg;
}

}  // namespace auctions::mwu
