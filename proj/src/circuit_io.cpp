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

#include <stdexcept>
#include <string>

#include "chm/circuit.hpp"
#include "chm/json.hpp"

namespace chm {

namespace {

const char* clifford_type(CliffordKind kind) {
  switch (kind) {
    case CliffordKind::kCnot: return "cnot";
    case CliffordKind::kCz: return "cz";
    case CliffordKind::kH: return "h";
    case CliffordKind::kS: return "s";
  }
  return "?";
}

Json mult_to_json(const Rational& r) {
  if (r.den == 1) return r.num;
  return r.str();
}

Rational mult_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational{j.get<int>(), 1};
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("rotation 'mult' must be an integer or a \"p/q\" string");
}

Json weight_to_json(std::complex<double> w) {
  if (w.imag() == 0.0) return w.real();
  return Json::array({w.real(), w.imag()});
}

std::complex<double> weight_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("observable 'weight' must be a number or [re, im]");
}

Json rotation_to_json(const RotationGate& rot) {
  Json qubits = Json::array();
  std::string axis;
  for (std::size_t q = 0; q < rot.axis.num_qubits(); ++q) {
    const PauliLetter l = rot.axis.letter(q);
    if (l == PauliLetter::I) continue;
    qubits.push_back(q);
    axis.push_back(letter_char(l));
  }
  Json j;
  j["type"] = "rot";
  j["axis"] = axis;
  j["qubits"] = qubits;
  j["param"] = rot.param;
  j["mult"] = mult_to_json(rot.mult);
  return j;
}

RotationGate rotation_from_json(const Json& j, std::size_t n) {
  const auto axis = j.at("axis").get<std::string>();
  const auto qubits = j.at("qubits").get<std::vector<std::size_t>>();
  if (axis.size() != qubits.size()) {
    throw std::invalid_argument("rotation 'axis' and 'qubits' must have equal length");
  }
  PauliString p(n);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (qubits[i] >= n) throw std::invalid_argument("rotation qubit out of range");
    p.set_letter(qubits[i], letter_from_char(axis[i]));
  }
  RotationGate rot{p, j.at("param").get<std::size_t>(), Rational{}};
  if (j.contains("mult")) rot.mult = mult_from_json(j.at("mult"));
  return rot;
}

}  // namespace

std::string circuit_to_json(const Circuit& circuit, int indent) {
  Json doc;
  doc["version"] = kCircuitFormatVersion;
  doc["n"] = circuit.num_qubits();
  doc["L"] = circuit.num_layers();
  doc["m"] = circuit.num_params();
  doc["input_state"] = "zero";
  Json layers = Json::array();
  for (const Layer& layer : circuit.layers()) {
    Json jl;
    Json enc = Json::array();
    for (const EncoderGate& e : layer.encoder) {
      enc.push_back(Json{{"axis", std::string(1, letter_char(e.axis))}, {"qubit", e.qubit}});
    }
    Json tr = Json::array();
    for (const TrainableGate& g : layer.trainable) {
      if (const auto* rot = std::get_if<RotationGate>(&g)) {
        tr.push_back(rotation_to_json(*rot));
      } else {
        const auto& cg = std::get<CliffordGate>(g);
        if (cg.kind == CliffordKind::kCnot || cg.kind == CliffordKind::kCz) {
          tr.push_back(Json{{"type", clifford_type(cg.kind)}, {"control", cg.control}, {"target", cg.target}});
        } else {
          tr.push_back(Json{{"type", clifford_type(cg.kind)}, {"qubit", cg.control}});
        }
      }
    }
    jl["encoder"] = enc;
    jl["trainable"] = tr;
    layers.push_back(jl);
  }
  doc["layers"] = layers;
  Json obs = Json::array();
  for (const ObservableTerm& t : circuit.observable()) {
    // Any phase on the Pauli word is folded into the weight.
    obs.push_back(Json{{"weight", weight_to_json(t.weight * t.pauli.phase())}, {"pauli", t.pauli.letters()}});
  }
  doc["observable"] = obs;
  return doc.dump(indent);
}

Circuit circuit_from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("circuit JSON does not parse: ") + e.what());
  }
  try {
    const int version = doc.at("version").get<int>();
    if (version != kCircuitFormatVersion) {
      throw std::invalid_argument("unsupported circuit format version " + std::to_string(version));
    }
    const auto n = doc.at("n").get<std::size_t>();
    const auto m = doc.at("m").get<std::size_t>();
    if (doc.contains("input_state") && doc["input_state"] != "zero") {
      throw std::invalid_argument("only the |0...0> input state is supported");
    }
    std::vector<Layer> layers;
    for (const Json& jl : doc.at("layers")) {
      Layer layer;
      for (const Json& je : jl.at("encoder")) {
        const auto axis = je.at("axis").get<std::string>();
        if (axis.size() != 1) throw std::invalid_argument("encoder axis must be a single letter");
        layer.encoder.push_back({letter_from_char(axis[0]), je.at("qubit").get<std::size_t>()});
      }
      for (const Json& jg : jl.at("trainable")) {
        const auto type = jg.at("type").get<std::string>();
        if (type == "rot") {
          layer.trainable.emplace_back(rotation_from_json(jg, n));
        } else if (type == "cnot" || type == "cz") {
          layer.trainable.emplace_back(CliffordGate{type == "cnot" ? CliffordKind::kCnot : CliffordKind::kCz,
                                                    jg.at("control").get<std::size_t>(),
                                                    jg.at("target").get<std::size_t>()});
        } else if (type == "h" || type == "s") {
          const auto q = jg.at("qubit").get<std::size_t>();
          layer.trainable.emplace_back(CliffordGate{type == "h" ? CliffordKind::kH : CliffordKind::kS, q, q});
        } else {
          throw std::invalid_argument("unknown trainable gate type '" + type + "'");
        }
      }
      layers.push_back(std::move(layer));
    }
    if (doc.contains("L") && doc["L"].get<std::size_t>() != layers.size()) {
      throw std::invalid_argument("'L' does not match the number of layers");
    }
    std::vector<ObservableTerm> obs;
    for (const Json& jt : doc.at("observable")) {
      const auto letters = jt.at("pauli").get<std::string>();
      if (letters.size() != n) throw std::invalid_argument("observable Pauli string width must equal n");
      obs.push_back({weight_from_json(jt.at("weight")), PauliString::parse(letters)});
    }
    return Circuit(n, m, std::move(layers), std::move(obs));
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed circuit JSON: ") + e.what());
  }
}

}  // namespace chm
