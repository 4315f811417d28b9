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
#include <span>
#include <vector>

#include "chm/circuit.hpp"

namespace chm {

using cplx = std::complex<double>;

/// Dense n-qubit state; basis index bit q is qubit q.
class StateVector {
 public:
  /// |0...0> on n qubits (n <= 24).
  explicit StateVector(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }

  /// exp(-i * angle * P / 2) for a Hermitian Pauli string P.
  void apply_rotation(const PauliString& axis, double angle);
  /// Same with cos(angle/2), sin(angle/2) supplied.
  void apply_rotation(const PauliString& axis, double c, double s);
  /// |psi> <- P |psi>, including the phase of P.
  void apply_pauli(const PauliString& pauli);
  void apply_clifford(const CliffordGate& gate, bool inverse = false);

  /// <psi| P |psi>.
  cplx expectation(const PauliString& pauli) const;
  /// <this| other>.
  cplx inner(const StateVector& other) const;
  double norm_squared() const;

 private:
  std::size_t num_qubits_;
  std::vector<cplx> amps_;
};

/// <bra| P |ket> without forming P|ket>.
cplx matrix_element(const StateVector& bra, const PauliString& pauli, const StateVector& ket);

/// Rotation angle a gate applies at (x, theta).
double gate_angle(const Gate& gate, double x, std::span<const double> theta);

/// Applies one gate (or its inverse) at (x, theta), with an extra angle
/// offset added to rotation/encoder angles.
void apply_gate(StateVector& state, const Gate& gate, double x, std::span<const double> theta, bool inverse = false,
                double angle_offset = 0.0);

/// U(theta, x)|0...0>.
StateVector prepare_state(const Circuit& circuit, double x, std::span<const double> theta);

/// Sum_i w_i <psi|P_i|psi> without taking the real part.
cplx raw_expectation(const Circuit& circuit, const StateVector& state);

/// f(x; theta) = <psi|O|psi>. Throws std::invalid_argument on a theta length
/// mismatch and std::runtime_error if the imaginary residual exceeds 1e-10.
double expectation(const Circuit& circuit, double x, std::span<const double> theta);

/// Exact df/dtheta_a by the two-term shift rule applied to each rotation gate
/// carrying index a: sum_g c_g (f(phi_g + pi/2) - f(phi_g - pi/2)) / 2.
double gradient(const Circuit& circuit, double x, std::span<const double> theta, std::size_t param);

/// All m partial derivatives at once by reverse-mode (adjoint) evaluation.
/// Agrees with `gradient` to rounding; costs about three circuit passes.
std::vector<double> jacobian(const Circuit& circuit, double x, std::span<const double> theta);

/// A circuit with theta fixed, for repeated evaluation over many x. Rotation
/// angles are cached and, when the register is small, each run of trainable
/// gates is fused into one dense unitary.
class BoundCircuit {
 public:
  BoundCircuit(const Circuit& circuit, std::span<const double> theta);

  /// f(x; theta).
  double value(double x) const;
  /// df/dtheta_a for all a by the adjoint method; `out` has length m.
  void jacobian(double x, std::span<double> out) const;

 private:
  struct Op {
    enum Kind { kEncoder, kRotation, kClifford } kind;
    PauliString axis;
    double c = 1.0;
    double s = 0.0;
    std::size_t param = 0;
    double mult = 1.0;
    CliffordGate clifford;
  };
  struct Segment {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool fused = false;
    std::vector<cplx> unitary;  // column-major dim x dim
  };

  void apply_ops(StateVector& state, std::size_t begin, std::size_t end, double cx, double sx, bool inverse) const;

  const Circuit& circuit_;
  std::vector<Op> ops_;
  std::vector<Segment> segments_;
};

}  // namespace chm
