// Copyright 2026 The chm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chm/circuit.hpp"

namespace chm {

/// Accessible input frequencies for scalar x. `omegas` is sorted ascending.
struct FrequencySet {
  std::vector<int> omegas;
  std::vector<std::vector<int>> per_layer;

  int max_frequency() const { return omegas.empty() ? 0 : omegas.back(); }
  bool contains(int omega) const;
  /// Position of omega in `omegas`; throws std::out_of_range if absent.
  std::size_t index_of(int omega) const;
};

/// Difference set of one commuting Pauli encoder block, using the half-angle
/// convention exp(-i x P / 2). For n uniform single-qubit encoders this is
/// {-n, ..., n}. Throws std::invalid_argument on mixed axes.
std::vector<int> difference_set(std::span<const EncoderGate> block);

/// Minkowski sum of per-layer frequency sets.
FrequencySet minkowski_sum(const std::vector<std::vector<int>>& per_layer);

/// Omega of a circuit from its encoder blocks.
FrequencySet frequency_set(const Circuit& circuit);

/// Number of tuples (d_1, ..., d_L), d_l in layer l's set, summing to omega.
/// Zero when omega is not accessible.
std::uint64_t redundancy(const std::vector<std::vector<int>>& per_layer, int omega);

/// |R(omega)| for every omega of the Minkowski sum, in ascending omega order.
std::vector<std::uint64_t> redundancy_profile(const std::vector<std::vector<int>>& per_layer);

/// Explicit path tuples summing to omega, or nullopt when there are more than
/// `cap` of them.
std::optional<std::vector<std::vector<int>>> enumerate_paths(const std::vector<std::vector<int>>& per_layer, int omega,
                                                             std::uint64_t cap = 10000);

}  // namespace chm
