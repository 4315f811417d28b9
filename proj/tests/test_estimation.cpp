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

#include <numbers>

#include "chm/errors.hpp"
#include "chm/estimation.hpp"
#include "chm/experiments.hpp"
#include "chm/pauli_prop.hpp"
#include "chm/simulator.hpp"
#include "chm/spectral.hpp"
#include "chm/stats.hpp"

namespace chm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Circuit constant_circuit() {
  Layer layer;
  layer.encoder = {{PauliLetter::X, 0}};
  return Circuit(1, 0, {layer}, {{1.0, PauliString::parse("I")}});
}

TEST(SampleTheta, Deterministic) {
  const SampleEnsemble ens{0, 10};
  EXPECT_EQ(sample_theta(ens, 0, 5), sample_theta(ens, 0, 5));
  EXPECT_NE(sample_theta(ens, 0, 5), sample_theta(ens, 1, 5));
  EXPECT_NE(sample_theta(ens, 0, 5), sample_theta(SampleEnsemble{1, 10}, 0, 5));
  EXPECT_THROW((void)sample_theta(ens, 10, 5), std::out_of_range);
  for (double t : sample_theta(ens, 3, 50)) {
    EXPECT_GE(t, 0.0);
    EXPECT_LT(t, kTwoPi);
  }
}

TEST(SampleTheta, UniformMoments) {
  const std::uint64_t n = 100000;
  const SampleEnsemble ens{42, n};
  double sum = 0.0;
  cplx chr = 0.0;
  for (std::uint64_t s = 0; s < n; ++s) {
    const double t = sample_theta(ens, s, 1)[0];
    sum += t;
    chr += std::polar(1.0, t);
  }
  const double sigma = kTwoPi / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
  EXPECT_NEAR(sum / n, std::numbers::pi, 3 * sigma);
  EXPECT_LT(std::abs(chr / static_cast<double>(n)), 0.02);
}

TEST(SampleEnsemble, SplitsDisjointAndExhaustive) {
  const SampleEnsemble ens{1, 11};
  EXPECT_FALSE(ens.c_split().overlaps(ens.mc_split()));
  EXPECT_EQ(ens.c_split().size() + ens.mc_split().size(), ens.count);
  EXPECT_EQ(ens.c_split().end, ens.mc_split().begin);
}

TEST(Dft, ConstantAndAnalytic) {
  const VectorC a = dft_coefficients(constant_circuit(), {}, 8);
  ASSERT_EQ(a.size(), 3);
  EXPECT_NEAR(std::abs(a(1) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(a(0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(a(2)), 0.0, 1e-14);

  const Circuit c = analytic_circuit();
  for (std::size_t nx : {4u, 5u, 16u, 126u}) {
    const std::vector<double> theta{0.0};
    const VectorC b = dft_coefficients(c, theta, nx);
    EXPECT_NEAR(std::abs(b(0) - 0.5), 0.0, 1e-12) << nx;
    EXPECT_NEAR(std::abs(b(1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(b(2) - 0.5), 0.0, 1e-12);
    const std::vector<double> theta2{1.1};
    const VectorC b2 = dft_coefficients(c, theta2, nx);
    EXPECT_NEAR(std::abs(b2(2) - 0.5 * std::cos(1.1)), 0.0, 1e-12);
  }
}

TEST(Dft, ConjugateSymmetric) {
  const Circuit c = build_family(Family::kYzyEnt, PauliLetter::Y, 3, 1, 2);
  const auto theta = sample_theta(SampleEnsemble{9, 1}, 0, c.num_params());
  const VectorC a = dft_coefficients(c, theta, 20);
  const Eigen::Index n = a.size();
  for (Eigen::Index i = 0; i < n; ++i) EXPECT_NEAR(std::abs(a(i) - std::conj(a(n - 1 - i))), 0.0, 1e-12);
}

TEST(Dft, AliasingRejected) {
  EXPECT_THROW(DftPlan(std::vector<int>{-2, -1, 0, 1, 2}, 4), ValidationError);
  EXPECT_NO_THROW(DftPlan(std::vector<int>{-2, -1, 0, 1, 2}, 5));
  EXPECT_THROW((void)dft_coefficients(build_family(Family::kYzyEnt, PauliLetter::X, 3, 1, 1),
                                      std::vector<double>(9, 0.0), 6),
               ValidationError);
}

TEST(EstimateC, AnalyticCircuit) {
  const Circuit c = analytic_circuit();
  const SampleEnsemble ens{5, 100000};
  const TruncatedK K = enumerate_K(1, 1);
  const CMatrix C = estimate_C(c, ens, ens.c_split(), K, 8);
  const double tol = 3.0 / std::sqrt(50000.0);
  const HarmonicIndex plus({{0, 1}});
  EXPECT_NEAR(std::abs(C.at(1, plus) - 0.25), 0.0, tol);
  EXPECT_LT(std::abs(C.at(1, HarmonicIndex{})), tol);
  EXPECT_LT(std::abs(C.at(0, plus)), tol);
  EXPECT_EQ(C.provenance["method"], "mc");
  EXPECT_EQ(C.provenance["params"]["seed"], 5);
  EXPECT_EQ(C.provenance["params"]["n_x"], 8);

  // The k = 0 column is the sample mean of a.
  const MatrixC samples = coefficient_samples(c, ens, ens.c_split(), 8);
  const VectorC mean = mc_mean(samples);
  for (Eigen::Index i = 0; i < mean.size(); ++i) EXPECT_NEAR(std::abs(C.values(i, 0) - mean(i)), 0.0, 1e-12);
}

TEST(EstimateC, ErrorScalesAsInverseSqrt) {
  const Circuit c = random_two_qubit_circuit(3);
  const CMatrix exact = exact_C(c);
  const TruncatedK K = enumerate_K(c.num_params(), c.num_params());
  auto error = [&](std::uint64_t size) {
    // Average over a few seeds so the ratio is not dominated by one draw.
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const SampleEnsemble ens{100 + seed, 2 * size};
      const CMatrix est = estimate_C(c, ens, ens.c_split(), K, 16);
      double sq = 0.0;
      for (std::size_t i = 0; i < est.rows(); ++i) {
        for (std::size_t j = 0; j < est.cols(); ++j) {
          if (!exact.column_of(est.ks[j])) continue;
          sq += std::norm(est.values(i, j) - exact.at(est.omegas[i], est.ks[j]));
        }
      }
      acc += sq;
    }
    return std::sqrt(acc);
  };
  const double ratio = error(2000) / error(4000);
  EXPECT_NEAR(ratio, std::sqrt(2.0), 0.3 * std::sqrt(2.0));
}

TEST(McReferences, AnalyticVarianceAndGram) {
  const Circuit c = analytic_circuit();
  const SampleEnsemble ens{8, 100000};
  const VectorR var = mc_variance(c, ens, ens.mc_split(), 8);
  const double tol = 4.0 / std::sqrt(50000.0);
  EXPECT_NEAR(var(0), 0.125, tol);
  EXPECT_NEAR(var(1), 0.0, 1e-20);
  EXPECT_NEAR(var(2), 0.125, tol);

  const MatrixC gram = mc_jacobian_gram(c, ens, SampleRange{0, 20000}, 8);
  for (Eigen::Index i : {0, 2}) {
    for (Eigen::Index j : {0, 2}) EXPECT_NEAR(std::abs(gram(i, j) - 0.125), 0.0, 0.01);
  }
}

TEST(McReferences, ConstantCircuitHasZeroVariance) {
  const SampleEnsemble ens{1, 64};
  const VectorR var = mc_variance(constant_circuit(), ens, ens.all(), 8);
  EXPECT_EQ(var, VectorR::Zero(var.size()));
}

TEST(McReferences, SecondMomentDecomposition) {
  const Circuit c = build_family(Family::kYzyEnt, PauliLetter::X, 2, 1, 2);
  const SampleEnsemble ens{2, 3000};
  const MatrixC samples = coefficient_samples(c, ens, ens.all(), 10);
  const VectorC mean = mc_mean(samples);
  const MatrixC lhs = mc_second_moment(samples);
  const MatrixC rhs = mc_covariance(samples) + mean * mean.adjoint();
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW((void)mc_variance(samples.leftCols(1)), ValidationError);
}

TEST(McReferences, ThreadCountDoesNotChangeBits) {
  const Circuit c = build_family(Family::kYzyEnt, PauliLetter::Y, 2, 1, 2);
  const SampleEnsemble ens{4, 2500};
  const TruncatedK K = enumerate_K(c.num_params(), 2);
  const CMatrix a = estimate_C(c, ens, ens.c_split(), K, 10, 1);
  const CMatrix b = estimate_C(c, ens, ens.c_split(), K, 10, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(mc_jacobian_gram(c, ens, ens.mc_split(), 10, 1), mc_jacobian_gram(c, ens, ens.mc_split(), 10, 4));
  EXPECT_EQ(mc_covariance(c, ens, ens.mc_split(), 10, 1), mc_covariance(c, ens, ens.mc_split(), 10, 2));
}

TEST(CoefficientJacobian, MatchesExactC) {
  const Circuit c = random_two_qubit_circuit(9);
  const CMatrix C = exact_C(c);
  const DftPlan plan(frequency_set(c).omegas, 8);
  const auto theta = sample_theta(SampleEnsemble{3, 1}, 0, c.num_params());
  const MatrixC j_sim = coefficient_jacobian(c, theta, plan);
  const MatrixC j_c = coefficient_jacobian_from_C(C, theta);
  EXPECT_LT((j_sim - j_c).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace chm
