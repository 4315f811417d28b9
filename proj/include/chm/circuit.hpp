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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chm/pauli.hpp"

namespace chm {

/// Angle multiplier of a rotation gate, kept exact so that the serialised
/// form round-trips.
struct Rational {
  int num = 1;
  int den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_unit() const { return den == 1 && (num == 1 || num == -1); }
  std::string str() const;
  static Rational parse(std::string_view text);
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class CliffordKind { kCnot, kCz, kH, kS };

/// Fixed Clifford gate. `target` is unused for single-qubit kinds.
struct CliffordGate {
  CliffordKind kind = CliffordKind::kCnot;
  std::size_t control = 0;  // the only qubit for H and S
  std::size_t target = 0;
  friend bool operator==(const CliffordGate&, const CliffordGate&) = default;
};

/// exp(-i * mult * theta[param] * axis / 2).
struct RotationGate {
  PauliString axis;
  std::size_t param = 0;
  Rational mult;
  friend bool operator==(const RotationGate&, const RotationGate&) = default;
};

/// exp(-i * x * P_qubit / 2) with P in {X, Y, Z}.
struct EncoderGate {
  PauliLetter axis = PauliLetter::Y;
  std::size_t qubit = 0;
  friend bool operator==(const EncoderGate&, const EncoderGate&) = default;
};

using TrainableGate = std::variant<RotationGate, CliffordGate>;
using Gate = std::variant<EncoderGate, RotationGate, CliffordGate>;

struct Layer {
  std::vector<EncoderGate> encoder;
  std::vector<TrainableGate> trainable;
  friend bool operator==(const Layer&, const Layer&) = default;
};

struct ObservableTerm {
  std::complex<double> weight;
  PauliString pauli;
  friend bool operator==(const ObservableTerm&, const ObservableTerm&) = default;
};

/// Layered re-uploading circuit U(theta, x) = prod_l W_l(theta) S_l(x) acting
/// on |0...0>, measured with a Pauli-sum observable. Immutable once built.
class Circuit {
 public:
  /// Checks structural consistency (qubit ranges, parameter indices below m,
  /// axis widths). The modelling assumptions are checked by `validate`.
  Circuit(std::size_t num_qubits, std::size_t num_params, std::vector<Layer> layers,
          std::vector<ObservableTerm> observable);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_params() const { return num_params_; }
  std::size_t num_layers() const { return layers_.size(); }
  const std::vector<Layer>& layers() const { return layers_; }
  const std::vector<ObservableTerm>& observable() const { return observable_; }

  /// All gates in application order (encoder block, then trainable block,
  /// layer by layer).
  const std::vector<Gate>& gates() const { return gates_; }

  std::size_t count_two_qubit_gates() const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_qubits_ == b.num_qubits_ && a.num_params_ == b.num_params_ && a.layers_ == b.layers_ &&
           a.observable_ == b.observable_;
  }

 private:
  std::size_t num_qubits_;
  std::size_t num_params_;
  std::vector<Layer> layers_;
  std::vector<ObservableTerm> observable_;
  std::vector<Gate> gates_;
};

// ---------------------------------------------------------------------------
// Benchmark families

enum class Family { kYzyNoEnt, kYzyEnt, kCircuit16, kCircuit17 };

Family parse_family(std::string_view name);
std::string family_name(Family family);

/// Order of the controlled-rotation ladder used by circuits 16 and 17 as
/// (control, target) pairs. The default ladder first couples (1->0), (3->2),
/// (5->4), ... and then (2->1), (4->3), ..., giving n-1 controlled rotations.
std::vector<std::pair<std::size_t, std::size_t>> default_controlled_ladder(std::size_t num_qubits);

struct FamilyOptions {
  /// Overrides the controlled-rotation ladder of circuits 16/17.
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> ladder;
};

/// Builds one of the four benchmark circuits with `layers` encoder/trainer
/// pairs and `depth` repetitions of the ansatz inside each trainable block.
/// The observable is the mean magnetisation (1/n) sum_i Z_i.
Circuit build_family(Family family, PauliLetter encoder_axis, std::size_t num_qubits, std::size_t layers,
                     std::size_t depth, const FamilyOptions& options = {});

/// Closed-form trainable parameter count of a family.
std::size_t family_param_count(Family family, std::size_t num_qubits, std::size_t layers, std::size_t depth);

/// Mean magnetisation observable on n qubits.
std::vector<ObservableTerm> mean_magnetisation(std::size_t num_qubits);

// ---------------------------------------------------------------------------
// Validation

enum class IssueKind { kSharedParameter, kUnusedParameter, kEncoderAxisMixing, kEncoderCoverage, kNonRealObservable };

struct ValidationIssue {
  IssueKind kind;
  std::string message;
  std::size_t index = 0;  // parameter, layer or observable term index
  std::size_t count = 0;  // number of uses for parameter issues
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  /// Parameter index -> number of rotation gates using it, for indices used
  /// more than once.
  std::map<std::size_t, std::size_t> shared_parameters() const;
  std::string str() const;
};

ValidationReport validate(const Circuit& circuit);

// ---------------------------------------------------------------------------
// Serialisation (versioned JSON document)

inline constexpr int kCircuitFormatVersion = 1;

std::string circuit_to_json(const Circuit& circuit, int indent = 2);
Circuit circuit_from_json(std::string_view text);

}  // namespace chm
