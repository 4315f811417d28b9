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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chm/circuit.hpp"
#include "chm/cmatrix.hpp"
#include "chm/harmonic.hpp"

namespace chm {

enum class Trig : std::uint8_t { kCos = 0, kSin = 1 };

/// Product of cos/sin factors of distinct parameters (degree <= 1 per
/// parameter). Factors are kept sorted by parameter index.
class ThetaMonomial {
 public:
  using Factor = std::pair<std::uint32_t, Trig>;

  ThetaMonomial() = default;
  explicit ThetaMonomial(std::vector<Factor> factors);

  std::span<const Factor> factors() const { return factors_; }
  std::size_t active_size() const { return factors_.size(); }
  bool contains(std::uint32_t param) const;
  /// Copy with one more factor; throws std::invalid_argument if the parameter
  /// is already present.
  ThetaMonomial with(std::uint32_t param, Trig trig) const;
  double evaluate(std::span<const double> theta) const;

  friend bool operator==(const ThetaMonomial&, const ThetaMonomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// cos(x)^cos_power * sin(x)^sin_power. Every encoder insertion shares the
/// input variable, so powers above one are allowed here.
struct XMonomial {
  std::uint32_t cos_power = 0;
  std::uint32_t sin_power = 0;

  std::uint32_t degree() const { return cos_power + sin_power; }
  double evaluate(double x) const;
  friend bool operator==(const XMonomial&, const XMonomial&) = default;
};

/// One branch of the Heisenberg propagation tree: scalar * P * N(x) * M(theta).
/// The Pauli word is stored with phase +1; its sign lives in `scalar`.
struct PropNode {
  PauliString pauli;
  std::complex<double> scalar{1.0, 0.0};
  XMonomial x;
  ThetaMonomial theta;
};

/// Result of U(phi)^dagger Q U(phi) for U = exp(-i phi P / 2).
struct ConjugationResult {
  bool commutes = true;
  /// Coefficient of cos(phi) (or the whole result when commuting).
  PauliString cos_branch;
  /// Coefficient of sin(phi): i P Q, Hermitian.
  PauliString sin_branch;
};

ConjugationResult conjugate_rotation(const PauliString& q, const PauliString& p);

/// U^dagger Q U for a Clifford gate (phase carried on the returned string).
PauliString conjugate_clifford(const PauliString& q, const CliffordGate& gate);

struct PropagationOptions {
  /// Abort when the live node list grows beyond this.
  std::size_t node_budget = std::size_t{1} << 24;
  /// Multiplies every sine branch; anything but +1 breaks the expansion and
  /// exists so that the oracle suite can be mutation-tested.
  double sin_branch_sign = 1.0;
};

struct PropagationResult {
  /// Surviving nodes (all-{I,Z} Pauli words); scalar already includes the
  /// observable weight, so f = sum_nu scalar_nu N_nu(x) M_nu(theta).
  std::vector<PropNode> nodes;
  /// Node count before the final <0|P|0> pruning.
  std::size_t nodes_before_pruning = 0;
  /// Largest number of anticommuting encounters along any branch.
  std::size_t max_encounters = 0;
  std::size_t peak_nodes = 0;
};

/// Heisenberg back-propagation of the observable through the circuit,
/// last gate first, with merging of identical branches. Throws
/// ValidationError for shared parameters or non-unit multipliers and
/// BudgetExceeded when the node budget is hit.
PropagationResult backpropagate(const Circuit& circuit, const PropagationOptions& options = {});

/// Character expansion of a theta monomial: exactly 2^|A| entries, in
/// canonical k order.
std::vector<std::pair<HarmonicIndex, std::complex<double>>> trig_to_characters(const ThetaMonomial& monomial);

/// Character expansion of an x monomial: omega -> coefficient, omega in
/// [-degree, degree].
std::map<int, std::complex<double>> x_characters(const XMonomial& monomial);

/// Exact C over the circuit's accessible frequencies and the union of node
/// k-supports (plus k = 0), columns in canonical order.
CMatrix exact_C(const Circuit& circuit, const PropagationOptions& options = {});
CMatrix exact_C_from_nodes(const Circuit& circuit, const std::vector<PropNode>& nodes);

struct SupportBound {
  std::size_t b_max = 0;
  std::uint64_t lower_bound = 1;
  std::size_t s_gen = 0;
};

/// b_max, 2^b_max and the size of the generated k-support; throws
/// InvariantError if S_gen < 2^b_max.
SupportBound support_bound(const std::vector<PropNode>& nodes);

}  // namespace chm
