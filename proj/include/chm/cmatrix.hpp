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

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chm/harmonic.hpp"
#include "chm/json.hpp"

namespace chm {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;

/// Circuit harmonic matrix: rows are input frequencies omega, columns are
/// parameter harmonics k, so that f(x; theta) = sum C_{omega k} e^{i omega x}
/// e^{i k.theta} (exactly for the exact construction, approximately for a
/// truncated estimate).
struct CMatrix {
  std::vector<int> omegas;
  std::vector<HarmonicIndex> ks;
  std::size_t num_params = 0;
  MatrixC values;
  /// {"method": "exact" | "mc", "params": {...}}
  Json provenance = Json::object();

  std::size_t rows() const { return omegas.size(); }
  std::size_t cols() const { return ks.size(); }
  std::optional<std::size_t> zero_column() const;
  std::optional<std::size_t> row_of(int omega) const;
  std::optional<std::size_t> column_of(const HarmonicIndex& k) const;
  /// Entry by label; zero when either label is absent.
  std::complex<double> at(int omega, const HarmonicIndex& k) const;
  /// sum_{omega,k} C e^{i omega x} e^{i k.theta}.
  std::complex<double> evaluate(double x, std::span<const double> theta) const;
};

/// Matrix with omega row labels and either omega or k column labels, as
/// written to disk by every pipeline.
struct LabeledMatrix {
  std::string kind;
  std::vector<int> row_omegas;
  std::variant<std::vector<int>, std::vector<HarmonicIndex>> col_labels;
  MatrixC values;
  /// Optional per-row mask (true = masked out); empty when not applicable.
  std::vector<bool> mask;
  Json provenance = Json::object();
};

inline constexpr int kMatrixFormatVersion = 1;

/// JSON document with the labels, shape and provenance in the header and the
/// entries as base64 of interleaved little-endian (re, im) doubles in
/// row-major order.
std::string write_matrix_json(const LabeledMatrix& matrix);
LabeledMatrix read_matrix_json(std::string_view text);

LabeledMatrix to_labeled(const CMatrix& c);
CMatrix cmatrix_from_labeled(const LabeledMatrix& m);

/// Heatmap CSV: row,col,re,im,abs (one line per entry, row-major).
std::string heatmap_csv(const LabeledMatrix& matrix);

std::string base64_encode(std::span<const unsigned char> bytes);
std::vector<unsigned char> base64_decode(std::string_view text);

}  // namespace chm
