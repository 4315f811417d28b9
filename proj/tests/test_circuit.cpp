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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "chm/circuit.hpp"
#include "chm/simulator.hpp"

namespace chm {
namespace {

TEST(Families, ParameterCounts) {
  for (Family f : {Family::kYzyNoEnt, Family::kYzyEnt, Family::kCircuit16, Family::kCircuit17}) {
    for (std::size_t n : {2u, 3u, 4u}) {
      for (std::size_t d : {1u, 3u}) {
        const Circuit c = build_family(f, PauliLetter::Y, n, 2, d);
        EXPECT_EQ(c.num_params(), family_param_count(f, n, 2, d)) << family_name(f);
        EXPECT_EQ(c.num_layers(), 2u);
      }
    }
  }
  // yzy: 3 rotations per qubit per depth; circuit16/17: 2n + (n-1).
  EXPECT_EQ(family_param_count(Family::kYzyEnt, 4, 1, 1), 12u);
  EXPECT_EQ(family_param_count(Family::kCircuit16, 4, 1, 1), 11u);
}

TEST(Families, EntanglerCounts) {
  EXPECT_EQ(build_family(Family::kYzyNoEnt, PauliLetter::X, 4, 1, 2).count_two_qubit_gates(), 0u);
  // Cascade from every control to every later target: n(n-1)/2 per repetition.
  EXPECT_EQ(build_family(Family::kYzyEnt, PauliLetter::X, 4, 1, 2).count_two_qubit_gates(), 12u);
  // Each controlled rotation decomposes with two Clifford gates.
  EXPECT_EQ(build_family(Family::kCircuit16, PauliLetter::Y, 4, 1, 1).count_two_qubit_gates(), 6u);
}

TEST(Families, DefaultLadder) {
  const auto l = default_controlled_ladder(5);
  const std::vector<std::pair<std::size_t, std::size_t>> expected{{1, 0}, {3, 2}, {2, 1}, {4, 3}};
  EXPECT_EQ(l, expected);
  EXPECT_TRUE(default_controlled_ladder(1).empty());
}

TEST(Families, ValidationOfFamilies) {
  EXPECT_TRUE(validate(build_family(Family::kYzyEnt, PauliLetter::X, 3, 2, 2)).ok());
  // The controlled-rotation decomposition reuses its angle.
  const ValidationReport r = validate(build_family(Family::kCircuit17, PauliLetter::Y, 3, 1, 1));
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.shared_parameters().size(), 2u);
  EXPECT_THROW(build_family(Family::kYzyEnt, PauliLetter::X, 1, 1, 1), std::invalid_argument);
  EXPECT_NO_THROW(build_family(Family::kYzyNoEnt, PauliLetter::X, 1, 1, 1));
}

TEST(Families, ObservableIsMeanMagnetisation) {
  const Circuit c = build_family(Family::kYzyNoEnt, PauliLetter::X, 4, 1, 1);
  ASSERT_EQ(c.observable().size(), 4u);
  for (std::size_t q = 0; q < 4; ++q) {
    EXPECT_DOUBLE_EQ(c.observable()[q].weight.real(), 0.25);
    EXPECT_EQ(c.observable()[q].pauli.letter(q), PauliLetter::Z);
  }
  // All parameters zero: f(x) = cos x for the X encoder.
  const std::vector<double> theta(c.num_params(), 0.0);
  EXPECT_NEAR(expectation(c, 0.4, theta), std::cos(0.4), 1e-12);
}

/// Controlled R_P(theta) applied directly on amplitudes.
void controlled_rotation(StateVector& s, std::size_t control, std::size_t target, PauliLetter axis, double theta) {
  auto a = s.amplitudes();
  const std::size_t cb = std::size_t{1} << control;
  const std::size_t tb = std::size_t{1} << target;
  const double c = std::cos(theta / 2);
  const double sn = std::sin(theta / 2);
  for (std::size_t b = 0; b < a.size(); ++b) {
    if (!(b & cb) || (b & tb)) continue;
    const cplx a0 = a[b];
    const cplx a1 = a[b | tb];
    if (axis == PauliLetter::Z) {
      a[b] = a0 * cplx(c, -sn);
      a[b | tb] = a1 * cplx(c, sn);
    } else {
      a[b] = c * a0 + cplx(0, -sn) * a1;
      a[b | tb] = cplx(0, -sn) * a0 + c * a1;
    }
  }
}

TEST(Families, ControlledRotationDecomposition) {
  for (Family f : {Family::kCircuit16, Family::kCircuit17}) {
    const PauliLetter axis = f == Family::kCircuit16 ? PauliLetter::Z : PauliLetter::X;
    const Circuit c = build_family(f, PauliLetter::Y, 2, 1, 1);
    ASSERT_EQ(c.num_params(), 5u);
    const std::vector<double> theta{0.3, -1.1, 0.8, 2.2, 1.7};
    const double x = 0.9;
    const StateVector got = prepare_state(c, x, theta);
    StateVector want(2);
    want.apply_rotation(PauliString::parse("YI"), x);
    want.apply_rotation(PauliString::parse("IY"), x);
    want.apply_rotation(PauliString::parse("XI"), theta[0]);
    want.apply_rotation(PauliString::parse("ZI"), theta[1]);
    want.apply_rotation(PauliString::parse("IX"), theta[2]);
    want.apply_rotation(PauliString::parse("IZ"), theta[3]);
    controlled_rotation(want, 1, 0, axis, theta[4]);
    EXPECT_NEAR(std::abs(got.inner(want)), 1.0, 1e-12) << family_name(f);
    // Exact equality including global phase.
    for (std::size_t b = 0; b < 4; ++b) {
      EXPECT_NEAR(std::abs(got.amplitudes()[b] - want.amplitudes()[b]), 0.0, 1e-12);
    }
  }
}

TEST(Circuit, StructuralChecks) {
  Layer layer;
  layer.encoder.push_back({PauliLetter::X, 0});
  layer.trainable.push_back(RotationGate{PauliString::parse("Y"), 1, {}});
  EXPECT_THROW(Circuit(1, 1, {layer}, {{1.0, PauliString::parse("Z")}}), std::invalid_argument);
  layer.trainable[0] = RotationGate{PauliString::parse("I"), 0, {}};
  EXPECT_THROW(Circuit(1, 1, {layer}, {{1.0, PauliString::parse("Z")}}), std::invalid_argument);
  layer.trainable[0] = CliffordGate{CliffordKind::kCnot, 0, 0};
  EXPECT_THROW(Circuit(1, 0, {layer}, {{1.0, PauliString::parse("Z")}}), std::invalid_argument);
}

TEST(Circuit, ValidateFlagsEachIssue) {
  Layer layer;
  layer.encoder = {{PauliLetter::X, 0}, {PauliLetter::Y, 1}};
  layer.trainable.push_back(RotationGate{PauliString::parse("YI"), 0, {}});
  layer.trainable.push_back(RotationGate{PauliString::parse("IY"), 0, {}});
  const Circuit c(2, 2, {layer}, {{{1.0, 0.5}, PauliString::parse("ZI")}});
  const ValidationReport r = validate(c);
  std::set<IssueKind> kinds;
  for (const auto& i : r.issues) kinds.insert(i.kind);
  EXPECT_TRUE(kinds.count(IssueKind::kSharedParameter));
  EXPECT_TRUE(kinds.count(IssueKind::kUnusedParameter));
  EXPECT_TRUE(kinds.count(IssueKind::kEncoderAxisMixing));
  EXPECT_TRUE(kinds.count(IssueKind::kNonRealObservable));
  EXPECT_EQ(r.shared_parameters().at(0), 2u);
  EXPECT_FALSE(r.str().empty());

  Layer partial;
  partial.encoder = {{PauliLetter::X, 0}};
  partial.trainable.push_back(RotationGate{PauliString::parse("YI"), 0, {}});
  const ValidationReport r2 = validate(Circuit(2, 1, {partial}, {{1.0, PauliString::parse("ZI")}}));
  ASSERT_EQ(r2.issues.size(), 1u);
  EXPECT_EQ(r2.issues[0].kind, IssueKind::kEncoderCoverage);
}

TEST(CircuitJson, RoundTripFamilies) {
  for (Family f : {Family::kYzyNoEnt, Family::kYzyEnt, Family::kCircuit16, Family::kCircuit17}) {
    const Circuit c = build_family(f, PauliLetter::X, 3, 2, 2);
    const std::string text = circuit_to_json(c);
    EXPECT_EQ(circuit_from_json(text), c) << family_name(f);
    EXPECT_EQ(circuit_to_json(circuit_from_json(text)), text);
  }
}

TEST(CircuitJson, CustomGatesAndWeights) {
  Layer layer;
  layer.encoder = {{PauliLetter::Z, 0}, {PauliLetter::Z, 1}};
  layer.trainable.push_back(RotationGate{PauliString::parse("XY"), 0, {-1, 1}});
  layer.trainable.push_back(CliffordGate{CliffordKind::kH, 1, 1});
  layer.trainable.push_back(CliffordGate{CliffordKind::kS, 0, 0});
  layer.trainable.push_back(CliffordGate{CliffordKind::kCz, 0, 1});
  layer.trainable.push_back(RotationGate{PauliString::parse("IZ"), 1, {3, 2}});
  const Circuit c(2, 2, {layer}, {{0.5, PauliString::parse("ZZ")}, {{0.0, 1.0}, PauliString::parse("XI")}});
  EXPECT_EQ(circuit_from_json(circuit_to_json(c)), c);
}

TEST(CircuitJson, Errors) {
  EXPECT_THROW(circuit_from_json("{"), std::invalid_argument);
  EXPECT_THROW(circuit_from_json(R"({"version": 99})"), std::invalid_argument);
  const std::string text = circuit_to_json(build_family(Family::kYzyEnt, PauliLetter::X, 2, 1, 1));
  std::string bad = text;
  bad.replace(bad.find("\"cnot\""), 6, "\"swap\"");
  EXPECT_THROW(circuit_from_json(bad), std::invalid_argument);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("2/4"), (Rational{1, 2}));
  EXPECT_EQ(Rational::parse("-3"), (Rational{-3, 1}));
  EXPECT_EQ((Rational{-1, 2}).str(), "-1/2");
  EXPECT_TRUE((Rational{-1, 1}).is_unit());
  EXPECT_FALSE((Rational{1, 2}).is_unit());
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
}

}  // namespace
}  // namespace chm
