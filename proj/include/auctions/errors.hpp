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

#include <stdexcept>
#include <string>

namespace auctions {

/// Joint type space (or an action grid) is larger than the configured cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Requested a conditional probability ratio with a zero denominator.
struct ZeroConditional : std::runtime_error {
  explicit ZeroConditional(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// An observed constraint violation exceeded the declared row width
/// (indicates a bug in the caller's width accounting).
struct WidthViolation : std::runtime_error {
  explicit WidthViolation(const std::string& what) : std::runtime_error(what) {}
};

struct IncompleteTranscript : std::logic_error {
  explicit IncompleteTranscript(const std::string& what) : std::logic_error(what) {}
};

/// A welfare-maximization oracle received a negative multiplier in
/// inequality mode (caller bug: inequality mode guarantees non-negativity).
struct NegativeDual : std::logic_error {
  explicit NegativeDual(const std::string& what) : std::logic_error(what) {}
};

struct NonIntegerPayment : std::invalid_argument {
  explicit NonIntegerPayment(const std::string& what) : std::invalid_argument(what) {}
};

/// The per-scenario feasible action set is empty (malformed polytope).
struct InfeasibleScenario : std::runtime_error {
  explicit InfeasibleScenario(const std::string& what) : std::runtime_error(what) {}
};

/// Scaling fix found a cell with zero realized allocation but a
/// non-negligible target (signals a failed synthesis).
struct DegenerateRatio : std::runtime_error {
  explicit DegenerateRatio(const std::string& what) : std::runtime_error(what) {}
};

struct SettingMismatch : std::invalid_argument {
  explicit SettingMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct VersionMismatch : std::runtime_error {
  explicit VersionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedDocument : std::runtime_error {
  explicit MalformedDocument(const std::string& what) : std::runtime_error(what) {}
};

struct OracleFailure : std::runtime_error {
  explicit OracleFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace auctions
