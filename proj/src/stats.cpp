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

#include "chm/stats.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chm/errors.hpp"

namespace chm {

namespace {

Eigen::Index require_zero_column(const CMatrix& c) {
  const auto z = c.zero_column();
  if (!z) throw ValidationError("C has no k = 0 column");
  return static_cast<Eigen::Index>(*z);
}

}  // namespace

MatrixC covariance_from_C(const CMatrix& c) {
  const Eigen::Index z = require_zero_column(c);
  MatrixC centred = c.values;
  centred.col(z).setZero();
  return centred * centred.adjoint();
}

VectorR variance_profile(const CMatrix& c) {
  const Eigen::Index z = require_zero_column(c);
  VectorR v = c.values.cwiseAbs2().rowwise().sum();
  v -= c.values.col(z).cwiseAbs2();
  return v.cwiseMax(0.0);
}

VectorR row_energy(const CMatrix& c) {
  require_zero_column(c);
  return c.values.cwiseAbs2().rowwise().sum();
}

// ---------------------------------------------------------------------------

std::size_t CorrelationMatrix::unmasked_count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), false));
}

CorrelationMatrix correlation(const MatrixC& cov, const VectorR& variance, double mask_threshold) {
  const Eigen::Index n = cov.rows();
  if (cov.cols() != n || variance.size() != n) throw std::invalid_argument("correlation: shape mismatch");
  CorrelationMatrix out;
  out.variance = variance;
  out.mask.assign(static_cast<std::size_t>(n), true);
  const double vmax = n > 0 ? variance.maxCoeff() : 0.0;
  if (!(vmax > 0.0)) throw ValidationError("correlation: every variance vanishes");
  const double floor = mask_threshold * vmax;
  VectorR inv_sqrt = VectorR::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (variance(i) >= floor && variance(i) > 0.0) {
      out.mask[static_cast<std::size_t>(i)] = false;
      inv_sqrt(i) = 1.0 / std::sqrt(variance(i));
    }
  }
  out.values = inv_sqrt.asDiagonal() * cov * inv_sqrt.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!out.mask[static_cast<std::size_t>(i)]) out.values(i, i) = 1.0;
  }
  return out;
}

CorrelationMatrix correlation(const MatrixC& cov, double mask_threshold) {
  return correlation(cov, cov.diagonal().real(), mask_threshold);
}

// ---------------------------------------------------------------------------

MatrixC M_kernel(std::span<const HarmonicIndex> ks, std::span<const double> theta) {
  const auto n = static_cast<Eigen::Index>(ks.size());
  VectorC psi(n);
  for (Eigen::Index i = 0; i < n; ++i) psi(i) = ks[static_cast<std::size_t>(i)].character(theta);
  MatrixC m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = static_cast<double>(ks[static_cast<std::size_t>(i)].dot(ks[static_cast<std::size_t>(j)])) * psi(i) *
                std::conj(psi(j));
    }
  }
  return m;
}

VectorR M_averaged(std::span<const HarmonicIndex> ks) {
  VectorR d(static_cast<Eigen::Index>(ks.size()));
  for (std::size_t i = 0; i < ks.size(); ++i) d(static_cast<Eigen::Index>(i)) = static_cast<double>(ks[i].weight());
  return d;
}

MatrixC coefficient_jacobian_from_C(const CMatrix& c, std::span<const double> theta) {
  if (theta.size() != c.num_params) throw std::invalid_argument("theta length does not match C");
  MatrixC x = MatrixC::Zero(static_cast<Eigen::Index>(c.rows()), static_cast<Eigen::Index>(c.num_params));
  for (std::size_t j = 0; j < c.cols(); ++j) {
    const HarmonicIndex& k = c.ks[j];
    const std::complex<double> psi = k.character(theta);
    const auto col = c.values.col(static_cast<Eigen::Index>(j));
    for (const auto& [a, sign] : k.entries()) {
      x.col(static_cast<Eigen::Index>(a)) += (std::complex<double>{0.0, static_cast<double>(sign)} * psi) * col;
    }
  }
  return x;
}

MatrixC H_kernel(const CMatrix& c, std::span<const double> theta) {
  if (c.cols() <= kMaterialiseMLimit) {
    return c.values * M_kernel(c.ks, theta) * c.values.adjoint();
  }
  // M = Psi Psi^dagger with Psi_{k a} = i k_a e^{i k.theta}, so H = X X^dagger.
  const MatrixC x = coefficient_jacobian_from_C(c, theta);
  return x * x.adjoint();
}

MatrixC H_averaged(const CMatrix& c) {
  const VectorR w = M_averaged(c.ks);
  return c.values * w.asDiagonal() * c.values.adjoint();
}

MatrixC design_matrix(std::span<const int> omegas, std::span<const double> xs) {
  MatrixC v(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(omegas.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::polar(1.0, omegas[j] * xs[i]);
    }
  }
  return v;
}

MatrixC data_qntk(const MatrixC& v, const MatrixC& h) { return v * h * v.adjoint(); }

// ---------------------------------------------------------------------------

namespace {

void require_same_shape(const MatrixC& a, const MatrixC& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("metric: shape mismatch");
}

}  // namespace

double frobenius_error(const MatrixC& a, const MatrixC& b) {
  require_same_shape(a, b);
  const double nb = b.norm();
  if (nb == 0.0) throw ValidationError("frobenius_error: reference matrix is zero");
  return (a - b).norm() / nb;
}

double cosine_similarity(const MatrixC& a, const MatrixC& b) {
  require_same_shape(a, b);
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine_similarity: zero matrix");
  return (a.adjoint() * b).trace().real() / (na * nb);
}

double mean_offdiag(const CorrelationMatrix& corr) {
  const auto n = static_cast<std::size_t>(corr.values.rows());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (corr.mask[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (corr.mask[j]) continue;
      sum += std::abs(corr.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double mean_offdiag_all(const MatrixC& corr) {
  const Eigen::Index n = corr.rows();
  double sum = 0.0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      sum += std::abs(corr(i, j));
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double pearson(const VectorR& a, const VectorR& b) {
  if (a.size() != b.size() || a.size() < 2) throw ValidationError("pearson: need two vectors of equal length >= 2");
  const VectorR ca = a.array() - a.mean();
  const VectorR cb = b.array() - b.mean();
  const double den = ca.norm() * cb.norm();
  if (den == 0.0) throw ValidationError("pearson: constant vector");
  return ca.dot(cb) / den;
}

MatrixC normalise_frobenius(const MatrixC& a) {
  const double n = a.norm();
  return n == 0.0 ? a : MatrixC(a / n);
}

MatrixC restrict_to(const MatrixC& a, const std::vector<bool>& keep) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) idx.push_back(static_cast<Eigen::Index>(i));
  }
  const auto k = static_cast<Eigen::Index>(idx.size());
  MatrixC out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) out(i, j) = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  return out;
}

bool is_psd(const MatrixC& a, double rel_tol) {
  if (a.size() == 0) return true;
  const MatrixC herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixC> solver(herm, Eigen::EigenvaluesOnly);
  const double scale = std::max(std::abs(herm.trace().real()), 1e-300);
  return solver.eigenvalues().minCoeff() >= -rel_tol * scale;
}

double hermitian_defect(const MatrixC& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace chm
