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

#include "chm/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chm {

namespace {

constexpr std::size_t kMaxSimQubits = 24;

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

void check_theta(const Circuit& circuit, std::span<const double> theta) {
  if (theta.size() != circuit.num_params()) {
    throw std::invalid_argument("theta has length " + std::to_string(theta.size()) + ", circuit expects m=" +
                                std::to_string(circuit.num_params()));
  }
}

PauliString encoder_axis(const EncoderGate& e, std::size_t n) { return PauliString::single(n, e.qubit, e.axis); }

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxSimQubits) {
    throw std::invalid_argument("statevector simulation supports 1..24 qubits");
  }
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::apply_rotation(const PauliString& axis, double angle) {
  apply_rotation(axis, std::cos(0.5 * angle), std::sin(0.5 * angle));
}

void StateVector::apply_rotation(const PauliString& axis, double c, double s) {
  const std::uint64_t xm = axis.x_bits();
  const std::uint64_t zm = axis.z_bits();
  // -i * sin * (phase of P including i^{#Y}).
  const cplx k = cplx{0.0, -s} * i_power(static_cast<int>(axis.count_y()) + axis.phase_exponent());
  const std::size_t dim = amps_.size();
  if (xm == 0) {
    for (std::size_t b = 0; b < dim; ++b) {
      amps_[b] *= cplx{c, 0.0} + k * parity_sign(b & zm);
    }
    return;
  }
  const std::uint64_t low = xm & (~xm + 1);
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & low) continue;
    const std::size_t p = b ^ xm;
    const cplx vb = amps_[b];
    const cplx vp = amps_[p];
    // P|p> = i^{#Y} (-1)^{|p & z|} |b>.
    amps_[b] = c * vb + k * parity_sign(p & zm) * vp;
    amps_[p] = c * vp + k * parity_sign(b & zm) * vb;
  }
}

void StateVector::apply_pauli(const PauliString& pauli) {
  const std::uint64_t xm = pauli.x_bits();
  const std::uint64_t zm = pauli.z_bits();
  const cplx ph = i_power(static_cast<int>(pauli.count_y()) + pauli.phase_exponent());
  std::vector<cplx> out(amps_.size());
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    out[b ^ xm] = ph * parity_sign(b & zm) * amps_[b];
  }
  amps_.swap(out);
}

void StateVector::apply_clifford(const CliffordGate& gate, bool inverse) {
  const std::size_t dim = amps_.size();
  const std::size_t cbit = std::size_t{1} << gate.control;
  switch (gate.kind) {
    case CliffordKind::kCnot: {
      const std::size_t tbit = std::size_t{1} << gate.target;
      for (std::size_t b = 0; b < dim; ++b) {
        if ((b & cbit) && !(b & tbit)) std::swap(amps_[b], amps_[b | tbit]);
      }
      break;
    }
    case CliffordKind::kCz: {
      const std::size_t tbit = std::size_t{1} << gate.target;
      for (std::size_t b = 0; b < dim; ++b) {
        if ((b & cbit) && (b & tbit)) amps_[b] = -amps_[b];
      }
      break;
    }
    case CliffordKind::kH: {
      const double r = std::numbers::sqrt2 / 2.0;
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & cbit) continue;
        const cplx a0 = amps_[b];
        const cplx a1 = amps_[b | cbit];
        amps_[b] = r * (a0 + a1);
        amps_[b | cbit] = r * (a0 - a1);
      }
      break;
    }
    case CliffordKind::kS: {
      const cplx ph = inverse ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & cbit) amps_[b] *= ph;
      }
      break;
    }
  }
}

cplx StateVector::expectation(const PauliString& pauli) const {
  const std::uint64_t xm = pauli.x_bits();
  const std::uint64_t zm = pauli.z_bits();
  const cplx ph = i_power(static_cast<int>(pauli.count_y()) + pauli.phase_exponent());
  cplx acc{0.0, 0.0};
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    acc += std::conj(amps_[b ^ xm]) * parity_sign(b & zm) * amps_[b];
  }
  return ph * acc;
}

cplx matrix_element(const StateVector& bra, const PauliString& pauli, const StateVector& ket) {
  const std::uint64_t xm = pauli.x_bits();
  const std::uint64_t zm = pauli.z_bits();
  const cplx ph = i_power(static_cast<int>(pauli.count_y()) + pauli.phase_exponent());
  const auto b_amps = bra.amplitudes();
  const auto k_amps = ket.amplitudes();
  cplx acc{0.0, 0.0};
  // (P|ket>)_{b ^ x} = ph (-1)^{|b & z|} ket_b.
  for (std::size_t b = 0; b < k_amps.size(); ++b) {
    acc += std::conj(b_amps[b ^ xm]) * parity_sign(b & zm) * k_amps[b];
  }
  return ph * acc;
}

cplx StateVector::inner(const StateVector& other) const {
  cplx acc{0.0, 0.0};
  for (std::size_t b = 0; b < amps_.size(); ++b) acc += std::conj(amps_[b]) * other.amps_[b];
  return acc;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return acc;
}

double gate_angle(const Gate& gate, double x, std::span<const double> theta) {
  if (std::holds_alternative<EncoderGate>(gate)) return x;
  if (const auto* rot = std::get_if<RotationGate>(&gate)) return rot->mult.value() * theta[rot->param];
  return 0.0;
}

void apply_gate(StateVector& state, const Gate& gate, double x, std::span<const double> theta, bool inverse,
                double angle_offset) {
  const double sign = inverse ? -1.0 : 1.0;
  if (const auto* e = std::get_if<EncoderGate>(&gate)) {
    state.apply_rotation(encoder_axis(*e, state.num_qubits()), sign * (x + angle_offset));
  } else if (const auto* rot = std::get_if<RotationGate>(&gate)) {
    state.apply_rotation(rot->axis, sign * (rot->mult.value() * theta[rot->param] + angle_offset));
  } else {
    state.apply_clifford(std::get<CliffordGate>(gate), inverse);
  }
}

StateVector prepare_state(const Circuit& circuit, double x, std::span<const double> theta) {
  check_theta(circuit, theta);
  StateVector state(circuit.num_qubits());
  for (const Gate& g : circuit.gates()) apply_gate(state, g, x, theta);
  return state;
}

cplx raw_expectation(const Circuit& circuit, const StateVector& state) {
  cplx acc{0.0, 0.0};
  for (const ObservableTerm& t : circuit.observable()) acc += t.weight * state.expectation(t.pauli);
  return acc;
}

double expectation(const Circuit& circuit, double x, std::span<const double> theta) {
  const cplx value = raw_expectation(circuit, prepare_state(circuit, x, theta));
  if (std::abs(value.imag()) >= 1e-10) {
    throw std::runtime_error("expectation has imaginary residual " + std::to_string(value.imag()));
  }
  return value.real();
}

namespace {

double shifted_expectation(const Circuit& circuit, double x, std::span<const double> theta, std::size_t gate_index,
                           double offset) {
  StateVector state(circuit.num_qubits());
  const auto& gates = circuit.gates();
  for (std::size_t g = 0; g < gates.size(); ++g) {
    apply_gate(state, gates[g], x, theta, false, g == gate_index ? offset : 0.0);
  }
  return raw_expectation(circuit, state).real();
}

}  // namespace

double gradient(const Circuit& circuit, double x, std::span<const double> theta, std::size_t param) {
  check_theta(circuit, theta);
  if (param >= circuit.num_params()) {
    throw std::out_of_range("parameter index " + std::to_string(param) + " out of range (m=" +
                            std::to_string(circuit.num_params()) + ")");
  }
  constexpr double kShift = std::numbers::pi / 2.0;
  double grad = 0.0;
  const auto& gates = circuit.gates();
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const auto* rot = std::get_if<RotationGate>(&gates[g]);
    if (rot == nullptr || rot->param != param) continue;
    const double plus = shifted_expectation(circuit, x, theta, g, kShift);
    const double minus = shifted_expectation(circuit, x, theta, g, -kShift);
    grad += rot->mult.value() * 0.5 * (plus - minus);
  }
  return grad;
}

std::vector<double> jacobian(const Circuit& circuit, double x, std::span<const double> theta) {
  StateVector psi = prepare_state(circuit, x, theta);
  StateVector lambda(circuit.num_qubits());
  {
    auto out = lambda.amplitudes();
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    for (const ObservableTerm& t : circuit.observable()) {
      if (t.weight.imag() != 0.0 || !t.pauli.is_hermitian()) {
        throw std::invalid_argument("jacobian requires a Hermitian observable with real weights");
      }
      StateVector term = psi;
      term.apply_pauli(t.pauli);
      const auto src = term.amplitudes();
      for (std::size_t b = 0; b < out.size(); ++b) out[b] += t.weight.real() * src[b];
    }
  }
  std::vector<double> grad(circuit.num_params(), 0.0);
  const auto& gates = circuit.gates();
  for (std::size_t g = gates.size(); g-- > 0;) {
    if (const auto* rot = std::get_if<RotationGate>(&gates[g])) {
      // psi is the state just after gate g, lambda = U_{>g}^dagger O psi_final.
      StateVector p_psi = psi;
      p_psi.apply_pauli(rot->axis);
      grad[rot->param] += rot->mult.value() * lambda.inner(p_psi).imag();
    }
    apply_gate(psi, gates[g], x, theta, true);
    apply_gate(lambda, gates[g], x, theta, true);
  }
  return grad;
}

// ---------------------------------------------------------------------------

BoundCircuit::BoundCircuit(const Circuit& circuit, std::span<const double> theta) : circuit_(circuit) {
  check_theta(circuit, theta);
  const std::size_t n = circuit.num_qubits();
  for (const Gate& g : circuit.gates()) {
    Op op{Op::kClifford, PauliString(n), 1.0, 0.0, 0, 1.0, {}};
    if (const auto* e = std::get_if<EncoderGate>(&g)) {
      op.kind = Op::kEncoder;
      op.axis = encoder_axis(*e, n);
    } else if (const auto* rot = std::get_if<RotationGate>(&g)) {
      op.kind = Op::kRotation;
      op.axis = rot->axis;
      op.param = rot->param;
      op.mult = rot->mult.value();
      const double angle = op.mult * theta[rot->param];
      op.c = std::cos(0.5 * angle);
      op.s = std::sin(0.5 * angle);
    } else {
      op.clifford = std::get<CliffordGate>(g);
    }
    ops_.push_back(std::move(op));
  }
  // Runs of non-encoder gates; fuse when a dense product is cheaper.
  const std::size_t dim = std::size_t{1} << n;
  std::size_t i = 0;
  while (i < ops_.size()) {
    Segment seg;
    seg.begin = i;
    if (ops_[i].kind == Op::kEncoder) {
      while (i < ops_.size() && ops_[i].kind == Op::kEncoder) ++i;
    } else {
      while (i < ops_.size() && ops_[i].kind != Op::kEncoder) ++i;
      seg.fused = dim <= 64 && dim < 2 * (i - seg.begin);
    }
    seg.end = i;
    if (seg.fused) {
      seg.unitary.resize(dim * dim);
      for (std::size_t col = 0; col < dim; ++col) {
        StateVector basis(n);
        auto amps = basis.amplitudes();
        amps[0] = 0.0;
        amps[col] = 1.0;
        apply_ops(basis, seg.begin, seg.end, 1.0, 0.0, false);
        std::copy(amps.begin(), amps.end(), seg.unitary.begin() + static_cast<std::ptrdiff_t>(col * dim));
      }
    }
    segments_.push_back(std::move(seg));
  }
}

void BoundCircuit::apply_ops(StateVector& state, std::size_t begin, std::size_t end, double cx, double sx,
                             bool inverse) const {
  const double sign = inverse ? -1.0 : 1.0;
  for (std::size_t k = begin; k < end; ++k) {
    const std::size_t idx = inverse ? end - 1 - (k - begin) : k;
    const Op& op = ops_[idx];
    switch (op.kind) {
      case Op::kEncoder: state.apply_rotation(op.axis, cx, sign * sx); break;
      case Op::kRotation: state.apply_rotation(op.axis, op.c, sign * op.s); break;
      case Op::kClifford: state.apply_clifford(op.clifford, inverse); break;
    }
  }
}

double BoundCircuit::value(double x) const {
  const double cx = std::cos(0.5 * x);
  const double sx = std::sin(0.5 * x);
  StateVector state(circuit_.num_qubits());
  std::vector<cplx> scratch;
  for (const Segment& seg : segments_) {
    if (!seg.fused) {
      apply_ops(state, seg.begin, seg.end, cx, sx, false);
      continue;
    }
    auto amps = state.amplitudes();
    const std::size_t dim = amps.size();
    scratch.assign(dim, cplx{0.0, 0.0});
    for (std::size_t col = 0; col < dim; ++col) {
      const cplx v = amps[col];
      if (v == cplx{0.0, 0.0}) continue;
      const cplx* u = &seg.unitary[col * dim];
      for (std::size_t row = 0; row < dim; ++row) scratch[row] += u[row] * v;
    }
    std::copy(scratch.begin(), scratch.end(), amps.begin());
  }
  return raw_expectation(circuit_, state).real();
}

void BoundCircuit::jacobian(double x, std::span<double> out) const {
  if (out.size() != circuit_.num_params()) throw std::invalid_argument("jacobian output has the wrong length");
  const double cx = std::cos(0.5 * x);
  const double sx = std::sin(0.5 * x);
  StateVector psi(circuit_.num_qubits());
  apply_ops(psi, 0, ops_.size(), cx, sx, false);
  StateVector lambda(circuit_.num_qubits());
  {
    auto acc = lambda.amplitudes();
    std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
    StateVector term(circuit_.num_qubits());
    for (const ObservableTerm& t : circuit_.observable()) {
      if (t.weight.imag() != 0.0 || !t.pauli.is_hermitian()) {
        throw std::invalid_argument("jacobian requires a Hermitian observable with real weights");
      }
      term = psi;
      term.apply_pauli(t.pauli);
      const auto src = term.amplitudes();
      for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += t.weight.real() * src[b];
    }
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t g = ops_.size(); g-- > 0;) {
    const Op& op = ops_[g];
    if (op.kind == Op::kRotation) out[op.param] += op.mult * matrix_element(lambda, op.axis, psi).imag();
    apply_ops(psi, g, g + 1, cx, sx, true);
    apply_ops(lambda, g, g + 1, cx, sx, true);
  }
}

}  // namespace chm
