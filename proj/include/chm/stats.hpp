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

#include <cstddef>
#include <span>
#include <vector>

#include "chm/cmatrix.hpp"
#include "chm/harmonic.hpp"

namespace chm {

inline constexpr double kDefaultMaskThreshold = 1e-10;
/// H_kernel builds M(theta) explicitly up to this many columns.
inline constexpr std::size_t kMaterialiseMLimit = 4096;

/// C P C^dagger with P removing the k = 0 column. Throws ValidationError when
/// C has no k = 0 column.
MatrixC covariance_from_C(const CMatrix& c);
/// sum_{k != 0} |C_{omega k}|^2.
VectorR variance_profile(const CMatrix& c);
/// |C_{omega 0}|^2 + variance.
VectorR row_energy(const CMatrix& c);

struct CorrelationMatrix {
  MatrixC values;
  /// true = vanishing variance, excluded from metrics.
  std::vector<bool> mask;
  VectorR variance;

  std::size_t unmasked_count() const;
};

/// D^{-1/2} cov D^{-1/2}. Rows with D < threshold * max(D) are masked and
/// zeroed; the unmasked diagonal is set to exactly 1. Throws ValidationError
/// when every row is masked.
CorrelationMatrix correlation(const MatrixC& cov, const VectorR& variance,
                              double mask_threshold = kDefaultMaskThreshold);
CorrelationMatrix correlation(const MatrixC& cov, double mask_threshold = kDefaultMaskThreshold);

/// M_{kl}(theta) = (k . l) e^{i (k - l) . theta}.
MatrixC M_kernel(std::span<const HarmonicIndex> ks, std::span<const double> theta);
/// Diagonal of the theta-average, ||k||^2.
VectorR M_averaged(std::span<const HarmonicIndex> ks);

/// Coefficient Jacobian implied by C: X_{omega a} = sum_k C_{omega k} i k_a e^{i k.theta}.
MatrixC coefficient_jacobian_from_C(const CMatrix& c, std::span<const double> theta);
/// C M(theta) C^dagger.
MatrixC H_kernel(const CMatrix& c, std::span<const double> theta);
/// C diag(||k||^2) C^dagger.
MatrixC H_averaged(const CMatrix& c);

/// V_{i omega} = e^{i omega x_i}.
MatrixC design_matrix(std::span<const int> omegas, std::span<const double> xs);
/// V H V^dagger.
MatrixC data_qntk(const MatrixC& v, const MatrixC& h);

// ---------------------------------------------------------------------------
// Metrics

/// ||A - B||_F / ||B||_F. Throws ValidationError when B = 0 or shapes differ.
double frobenius_error(const MatrixC& a, const MatrixC& b);
/// Re Tr(A^dagger B) / (||A||_F ||B||_F).
double cosine_similarity(const MatrixC& a, const MatrixC& b);
/// Mean |entry| over unmasked upper-triangle off-diagonal pairs.
double mean_offdiag(const CorrelationMatrix& corr);
/// Mean |entry| over every upper-triangle off-diagonal pair, masked rows
/// counting as zero.
double mean_offdiag_all(const MatrixC& corr);
/// Pearson correlation of two real vectors (centred, unit-normalised).
double pearson(const VectorR& a, const VectorR& b);
/// A / ||A||_F (A itself when zero).
MatrixC normalise_frobenius(const MatrixC& a);
/// Rows and columns where `keep` is true.
MatrixC restrict_to(const MatrixC& a, const std::vector<bool>& keep);
/// Min eigenvalue >= -rel_tol * max(trace, tiny) for a Hermitian matrix.
bool is_psd(const MatrixC& a, double rel_tol = 1e-10);
/// max |A - A^dagger|.
double hermitian_defect(const MatrixC& a);

}  // namespace chm
