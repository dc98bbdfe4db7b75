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
#include <span>

namespace auctions {

/// Counter-based splittable random stream (splitmix64 core).
///
/// A stream is fully determined by (seed, stream id), so independent
/// executions and parallel workers can be given disjoint, replayable
/// streams without sharing mutable state.
class RngStream {
 public:
  RngStream() = default;

  static RngStream from_seed(std::uint64_t seed, std::uint64_t stream = 0) {
    RngStream r;
    r.key_ = mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(mix(stream) + 0xD1B54A32D192ED03ULL);
    r.counter_ = 0;
    return r;
  }

  /// Derive an independent child stream; does not advance this stream.
  RngStream split(std::uint64_t stream) const {
    RngStream r;
    r.key_ = mix(key_ ^ mix(stream + 0xA0761D6478BD642FULL));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi] inclusive.
  int next_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  /// Draw an index from a probability mass function by CDF inversion.
  int next_index(std::span<const double> pmf) {
    const double u = next_unit();
    double acc = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      acc += pmf[k];
      if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(pmf.size()) - 1;  // guard against rounding at u ~ 1
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace auctions
