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

#include "chm/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chm {

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("bad rational multiplier '" + std::string(text) + "'");
    }
    return v;
  };
  Rational r;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    r.num = parse_int(text);
    r.den = 1;
  } else {
    r.num = parse_int(text.substr(0, slash));
    r.den = parse_int(text.substr(slash + 1));
  }
  if (r.den == 0) throw std::invalid_argument("rational multiplier with zero denominator");
  if (r.den < 0) {
    r.den = -r.den;
    r.num = -r.num;
  }
  const int g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

namespace {

void check_qubit(std::size_t q, std::size_t n, const char* what) {
  if (q >= n) {
    throw std::invalid_argument(std::string(what) + " qubit " + std::to_string(q) + " out of range (n=" +
                                std::to_string(n) + ")");
  }
}

}  // namespace

Circuit::Circuit(std::size_t num_qubits, std::size_t num_params, std::vector<Layer> layers,
                 std::vector<ObservableTerm> observable)
    : num_qubits_(num_qubits), num_params_(num_params), layers_(std::move(layers)), observable_(std::move(observable)) {
  if (num_qubits_ == 0 || num_qubits_ > PauliString::kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64]");
  }
  for (const Layer& layer : layers_) {
    for (const EncoderGate& e : layer.encoder) {
      check_qubit(e.qubit, num_qubits_, "encoder");
      if (e.axis == PauliLetter::I) throw std::invalid_argument("encoder axis must be X, Y or Z");
      gates_.emplace_back(e);
    }
    for (const TrainableGate& g : layer.trainable) {
      if (const auto* rot = std::get_if<RotationGate>(&g)) {
        if (rot->axis.num_qubits() != num_qubits_) {
          throw std::invalid_argument("rotation axis width does not match the qubit count");
        }
        if (rot->axis.phase_exponent() != 0 || rot->axis.has_identity_letters()) {
          throw std::invalid_argument("rotation axis must have phase +1 and a non-identity letter");
        }
        if (rot->param >= num_params_) {
          throw std::invalid_argument("rotation parameter index " + std::to_string(rot->param) +
                                      " out of range (m=" + std::to_string(num_params_) + ")");
        }
        if (rot->mult.den <= 0) throw std::invalid_argument("rotation multiplier must have positive denominator");
        gates_.emplace_back(*rot);
      } else {
        const auto& cg = std::get<CliffordGate>(g);
        check_qubit(cg.control, num_qubits_, "clifford");
        if (cg.kind == CliffordKind::kCnot || cg.kind == CliffordKind::kCz) {
          check_qubit(cg.target, num_qubits_, "clifford");
          if (cg.control == cg.target) throw std::invalid_argument("two-qubit Clifford needs distinct qubits");
        }
        gates_.emplace_back(cg);
      }
    }
  }
  for (const ObservableTerm& t : observable_) {
    if (t.pauli.num_qubits() != num_qubits_) {
      throw std::invalid_argument("observable term width does not match the qubit count");
    }
  }
}

std::size_t Circuit::count_two_qubit_gates() const {
  std::size_t count = 0;
  for (const Gate& g : gates_) {
    if (const auto* cg = std::get_if<CliffordGate>(&g)) {
      if (cg->kind == CliffordKind::kCnot || cg->kind == CliffordKind::kCz) ++count;
    } else if (const auto* rot = std::get_if<RotationGate>(&g)) {
      if (rot->axis.weight() >= 2) ++count;
    }
  }
  return count;
}

// ---------------------------------------------------------------------------

Family parse_family(std::string_view name) {
  if (name == "yzy-noent") return Family::kYzyNoEnt;
  if (name == "yzy-ent") return Family::kYzyEnt;
  if (name == "circuit16") return Family::kCircuit16;
  if (name == "circuit17") return Family::kCircuit17;
  throw std::invalid_argument("unknown circuit family '" + std::string(name) +
                              "' (expected yzy-noent, yzy-ent, circuit16 or circuit17)");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::kYzyNoEnt: return "yzy-noent";
    case Family::kYzyEnt: return "yzy-ent";
    case Family::kCircuit16: return "circuit16";
    case Family::kCircuit17: return "circuit17";
  }
  return "?";
}

std::vector<std::pair<std::size_t, std::size_t>> default_controlled_ladder(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> ladder;
  for (std::size_t t = 0; t + 1 < n; t += 2) ladder.emplace_back(t + 1, t);
  for (std::size_t t = 1; t + 1 < n; t += 2) ladder.emplace_back(t + 1, t);
  return ladder;
}

std::size_t family_param_count(Family family, std::size_t n, std::size_t layers, std::size_t depth) {
  switch (family) {
    case Family::kYzyNoEnt:
    case Family::kYzyEnt: return 3 * n * depth * layers;
    case Family::kCircuit16:
    case Family::kCircuit17: return (3 * n - 1) * depth * layers;
  }
  return 0;
}

std::vector<ObservableTerm> mean_magnetisation(std::size_t n) {
  std::vector<ObservableTerm> terms;
  terms.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    terms.push_back({std::complex<double>(1.0 / static_cast<double>(n), 0.0),
                     PauliString::single(n, q, PauliLetter::Z)});
  }
  return terms;
}

namespace {

RotationGate single_rotation(std::size_t n, std::size_t qubit, PauliLetter axis, std::size_t param,
                             Rational mult = {}) {
  return RotationGate{PauliString::single(n, qubit, axis), param, mult};
}

/// Controlled R_P(theta) as R_P(theta/2)_t * C-Q * R_P(-theta/2)_t * C-Q where
/// Q anticommutes with P (CNOT for Z/Y rotations, CZ for X rotations).
void append_controlled_rotation(std::vector<TrainableGate>& out, std::size_t n, std::size_t control,
                                std::size_t target, PauliLetter axis, std::size_t param) {
  const CliffordKind flip = axis == PauliLetter::X ? CliffordKind::kCz : CliffordKind::kCnot;
  out.emplace_back(CliffordGate{flip, control, target});
  out.emplace_back(single_rotation(n, target, axis, param, Rational{-1, 2}));
  out.emplace_back(CliffordGate{flip, control, target});
  out.emplace_back(single_rotation(n, target, axis, param, Rational{1, 2}));
}

}  // namespace

Circuit build_family(Family family, PauliLetter encoder_axis, std::size_t n, std::size_t layers, std::size_t depth,
                     const FamilyOptions& options) {
  if (n < 1 || layers < 1 || depth < 1) {
    throw std::invalid_argument("build_family requires n >= 1, L >= 1 and d >= 1");
  }
  if (family != Family::kYzyNoEnt && n < 2) {
    throw std::invalid_argument(family_name(family) + " needs at least 2 qubits");
  }
  if (encoder_axis == PauliLetter::I) throw std::invalid_argument("encoder axis must be X, Y or Z");

  const auto ladder = options.ladder.value_or(default_controlled_ladder(n));
  if (family == Family::kCircuit16 || family == Family::kCircuit17) {
    if (ladder.size() != n - 1) {
      throw std::invalid_argument("controlled ladder must contain n-1 pairs");
    }
    for (const auto& [c, t] : ladder) {
      if (c >= n || t >= n || c == t) throw std::invalid_argument("invalid controlled ladder pair");
    }
  }

  std::size_t next = 0;
  std::vector<Layer> out_layers;
  out_layers.reserve(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    Layer layer;
    for (std::size_t q = 0; q < n; ++q) layer.encoder.push_back({encoder_axis, q});
    for (std::size_t rep = 0; rep < depth; ++rep) {
      switch (family) {
        case Family::kYzyNoEnt:
        case Family::kYzyEnt:
          for (std::size_t q = 0; q < n; ++q) {
            layer.trainable.emplace_back(single_rotation(n, q, PauliLetter::Y, next++));
            layer.trainable.emplace_back(single_rotation(n, q, PauliLetter::Z, next++));
            layer.trainable.emplace_back(single_rotation(n, q, PauliLetter::Y, next++));
          }
          if (family == Family::kYzyEnt) {
            for (std::size_t c = 0; c < n; ++c) {
              for (std::size_t t = c + 1; t < n; ++t) {
                layer.trainable.emplace_back(CliffordGate{CliffordKind::kCnot, c, t});
              }
            }
          }
          break;
        case Family::kCircuit16:
        case Family::kCircuit17: {
          for (std::size_t q = 0; q < n; ++q) {
            layer.trainable.emplace_back(single_rotation(n, q, PauliLetter::X, next++));
            layer.trainable.emplace_back(single_rotation(n, q, PauliLetter::Z, next++));
          }
          const PauliLetter axis = family == Family::kCircuit16 ? PauliLetter::Z : PauliLetter::X;
          for (const auto& [c, t] : ladder) {
            append_controlled_rotation(layer.trainable, n, c, t, axis, next++);
          }
          break;
        }
      }
    }
    out_layers.push_back(std::move(layer));
  }
  return Circuit(n, next, std::move(out_layers), mean_magnetisation(n));
}

// ---------------------------------------------------------------------------

std::map<std::size_t, std::size_t> ValidationReport::shared_parameters() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& issue : issues) {
    if (issue.kind == IssueKind::kSharedParameter) out[issue.index] = issue.count;
  }
  return out;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& issue : issues) os << issue.message << '\n';
  return os.str();
}

ValidationReport validate(const Circuit& circuit) {
  ValidationReport report;
  std::vector<std::size_t> uses(circuit.num_params(), 0);
  for (const Gate& g : circuit.gates()) {
    if (const auto* rot = std::get_if<RotationGate>(&g)) ++uses[rot->param];
  }
  for (std::size_t a = 0; a < uses.size(); ++a) {
    if (uses[a] > 1) {
      report.issues.push_back({IssueKind::kSharedParameter,
                               "parameter " + std::to_string(a) + " is used by " + std::to_string(uses[a]) +
                                   " rotation gates (single-use violated)",
                               a, uses[a]});
    } else if (uses[a] == 0) {
      report.issues.push_back(
          {IssueKind::kUnusedParameter, "parameter " + std::to_string(a) + " is not used by any gate", a, 0});
    }
  }
  const auto& layers = circuit.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& enc = layers[l].encoder;
    if (enc.empty()) continue;
    const bool mixed = std::any_of(enc.begin(), enc.end(), [&](const EncoderGate& e) { return e.axis != enc[0].axis; });
    if (mixed) {
      report.issues.push_back(
          {IssueKind::kEncoderAxisMixing, "layer " + std::to_string(l) + " encoder block mixes Pauli axes", l, 0});
    }
    std::vector<std::size_t> per_qubit(circuit.num_qubits(), 0);
    for (const auto& e : enc) ++per_qubit[e.qubit];
    if (std::any_of(per_qubit.begin(), per_qubit.end(), [](std::size_t c) { return c != 1; })) {
      report.issues.push_back({IssueKind::kEncoderCoverage,
                               "layer " + std::to_string(l) + " encoder block must act exactly once on every qubit",
                               l, 0});
    }
  }
  const auto& obs = circuit.observable();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const bool real_weight = obs[i].weight.imag() == 0.0;
    if (!real_weight || !obs[i].pauli.is_hermitian()) {
      report.issues.push_back({IssueKind::kNonRealObservable,
                               "observable term " + std::to_string(i) + " (" + obs[i].pauli.str() +
                                   ") does not have a real coefficient",
                               i, 0});
    }
  }
  return report;
}

}  // namespace chm
