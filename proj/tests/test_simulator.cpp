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
#include <random>

#include "chm/circuit.hpp"
#include "chm/experiments.hpp"
#include "chm/simulator.hpp"

namespace chm {
namespace {

std::vector<double> random_theta(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> t(m);
  for (double& v : t) v = u(rng);
  return t;
}

TEST(StateVector, SingleQubitRotations) {
  const double phi = 0.7;
  StateVector s(1);
  s.apply_rotation(PauliString::parse("X"), phi);
  EXPECT_NEAR(std::abs(s.amplitudes()[0] - cplx(std::cos(phi / 2), 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitudes()[1] - cplx(0, -std::sin(phi / 2))), 0.0, 1e-15);

  StateVector y(1);
  y.apply_rotation(PauliString::parse("Y"), phi);
  EXPECT_NEAR(std::abs(y.amplitudes()[1] - cplx(std::sin(phi / 2), 0)), 0.0, 1e-15);

  StateVector z(1);
  z.apply_rotation(PauliString::parse("X"), std::numbers::pi / 2);
  z.apply_rotation(PauliString::parse("Z"), phi);
  // Rz multiplies |0> by e^{-i phi/2} and |1> by e^{+i phi/2}.
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(std::abs(z.amplitudes()[0] - r * std::polar(1.0, -phi / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z.amplitudes()[1] - cplx(0, -r) * std::polar(1.0, phi / 2)), 0.0, 1e-15);
}

TEST(StateVector, ExpectationsAndNorm) {
  StateVector s(2);
  s.apply_rotation(PauliString::parse("YI"), std::numbers::pi / 2);  // |+> on qubit 0
  EXPECT_NEAR(s.expectation(PauliString::parse("XI")).real(), 1.0, 1e-15);
  EXPECT_NEAR(s.expectation(PauliString::parse("ZI")).real(), 0.0, 1e-15);
  EXPECT_NEAR(s.expectation(PauliString::parse("IZ")).real(), 1.0, 1e-15);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(StateVector, CliffordGates) {
  // |01> in qubit order q0=1: CNOT(0 -> 1) gives q1 = 1.
  StateVector s(2);
  s.apply_rotation(PauliString::parse("XI"), std::numbers::pi);
  s.apply_clifford({CliffordKind::kCnot, 0, 1});
  EXPECT_NEAR(std::abs(s.amplitudes()[3]), 1.0, 1e-15);

  StateVector h(1);
  h.apply_clifford({CliffordKind::kH, 0, 0});
  EXPECT_NEAR(h.expectation(PauliString::parse("X")).real(), 1.0, 1e-15);
  h.apply_clifford({CliffordKind::kS, 0, 0});
  EXPECT_NEAR(h.expectation(PauliString::parse("Y")).real(), 1.0, 1e-15);
  h.apply_clifford({CliffordKind::kS, 0, 0}, true);
  EXPECT_NEAR(h.expectation(PauliString::parse("X")).real(), 1.0, 1e-15);

  StateVector cz(2);
  cz.apply_clifford({CliffordKind::kH, 0, 0});
  cz.apply_clifford({CliffordKind::kH, 1, 0});
  cz.apply_clifford({CliffordKind::kCz, 0, 1});
  EXPECT_NEAR(cz.amplitudes()[3].real(), -0.5, 1e-15);
}

TEST(Simulator, AnalyticCircuit) {
  const Circuit c = analytic_circuit();
  for (double x : {0.0, 0.3, 2.0}) {
    for (double t : {0.0, 1.1, -2.5}) {
      const std::vector<double> theta{t};
      EXPECT_NEAR(expectation(c, x, theta), std::cos(x) * std::cos(t), 1e-14);
      EXPECT_NEAR(gradient(c, x, theta, 0), -std::cos(x) * std::sin(t), 1e-14);
    }
  }
}

TEST(Simulator, ThetaLengthChecked) {
  const Circuit c = analytic_circuit();
  const std::vector<double> bad{0.1, 0.2};
  EXPECT_THROW(expectation(c, 0.0, bad), std::invalid_argument);
  const std::vector<double> ok{0.1};
  EXPECT_THROW(gradient(c, 0.0, ok, 1), std::out_of_range);
}

TEST(Simulator, ShiftRuleMatchesFiniteDifference) {
  const Circuit c = build_family(Family::kCircuit17, PauliLetter::Y, 3, 1, 2);
  std::vector<double> theta = random_theta(c.num_params(), 5);
  const double x = 0.37;
  const double h = 1e-5;
  for (std::size_t a = 0; a < c.num_params(); ++a) {
    std::vector<double> tp = theta, tm = theta;
    tp[a] += h;
    tm[a] -= h;
    const double fd = (expectation(c, x, tp) - expectation(c, x, tm)) / (2 * h);
    EXPECT_NEAR(gradient(c, x, theta, a), fd, 1e-8) << "param " << a;
  }
}

TEST(Simulator, AdjointMatchesShiftRule) {
  for (Family f : {Family::kYzyEnt, Family::kCircuit16, Family::kCircuit17}) {
    const Circuit c = build_family(f, PauliLetter::X, 3, 2, 1);
    const std::vector<double> theta = random_theta(c.num_params(), 11);
    const std::vector<double> jac = jacobian(c, 1.3, theta);
    for (std::size_t a = 0; a < c.num_params(); ++a) {
      EXPECT_NEAR(jac[a], gradient(c, 1.3, theta, a), 1e-12) << family_name(f) << " param " << a;
    }
  }
}

TEST(BoundCircuit, MatchesReferencePaths) {
  // n = 2 fuses trainable blocks into dense unitaries; n = 7 does not.
  for (std::size_t n : {2u, 7u}) {
    for (Family f : {Family::kYzyNoEnt, Family::kYzyEnt, Family::kCircuit16, Family::kCircuit17}) {
      const Circuit c = build_family(f, PauliLetter::Y, n, 2, 2);
      const std::vector<double> theta = random_theta(c.num_params(), 3 + n);
      const BoundCircuit bound(c, theta);
      std::vector<double> g(c.num_params());
      for (double x : {0.0, 0.9, 4.0}) {
        EXPECT_NEAR(bound.value(x), expectation(c, x, theta), 1e-12);
        bound.jacobian(x, g);
        const std::vector<double> ref = jacobian(c, x, theta);
        for (std::size_t a = 0; a < g.size(); ++a) EXPECT_NEAR(g[a], ref[a], 1e-12);
      }
    }
  }
}

TEST(Simulator, MultiQubitPauliRotation) {
  // exp(-i phi ZZ/2) on |++>: <XX> stays 1, <XI> becomes cos(phi).
  StateVector s(2);
  s.apply_clifford({CliffordKind::kH, 0, 0});
  s.apply_clifford({CliffordKind::kH, 1, 0});
  s.apply_rotation(PauliString::parse("ZZ"), 0.8);
  EXPECT_NEAR(s.expectation(PauliString::parse("XX")).real(), 1.0, 1e-14);
  EXPECT_NEAR(s.expectation(PauliString::parse("XI")).real(), std::cos(0.8), 1e-14);
  EXPECT_NEAR(s.expectation(PauliString::parse("YZ")).real(), std::sin(0.8), 1e-14);
}

}  // namespace
}  // namespace chm
