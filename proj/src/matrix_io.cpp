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

#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "chm/cmatrix.hpp"

namespace chm {

static_assert(std::endian::native == std::endian::little, "matrix payloads assume a little-endian host");

std::optional<std::size_t> CMatrix::zero_column() const {
  for (std::size_t j = 0; j < ks.size(); ++j) {
    if (ks[j].is_zero()) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> CMatrix::row_of(int omega) const {
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i] == omega) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> CMatrix::column_of(const HarmonicIndex& k) const {
  for (std::size_t j = 0; j < ks.size(); ++j) {
    if (ks[j] == k) return j;
  }
  return std::nullopt;
}

std::complex<double> CMatrix::at(int omega, const HarmonicIndex& k) const {
  const auto i = row_of(omega);
  const auto j = column_of(k);
  if (!i || !j) return {0.0, 0.0};
  return values(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
}

std::complex<double> CMatrix::evaluate(double x, std::span<const double> theta) const {
  VectorC psi(static_cast<Eigen::Index>(ks.size()));
  for (std::size_t j = 0; j < ks.size(); ++j) psi(static_cast<Eigen::Index>(j)) = ks[j].character(theta);
  const VectorC a = values * psi;
  std::complex<double> f{0.0, 0.0};
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    f += a(static_cast<Eigen::Index>(i)) * std::polar(1.0, omegas[i] * x);
  }
  return f;
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

Json k_label_json(const HarmonicIndex& k) {
  Json arr = Json::array();
  for (const auto& [a, s] : k.entries()) arr.push_back(Json::array({a, static_cast<int>(s)}));
  return arr;
}

HarmonicIndex k_label_from_json(const Json& j) {
  std::vector<HarmonicIndex::Entry> entries;
  for (const Json& e : j) {
    entries.emplace_back(e.at(0).get<std::uint32_t>(), static_cast<std::int8_t>(e.at(1).get<int>()));
  }
  return HarmonicIndex(std::move(entries));
}

}  // namespace

std::string base64_encode(std::span<const unsigned char> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (std::uint32_t{bytes[i]} << 16) | (std::uint32_t{bytes[i + 1]} << 8) | bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t v = std::uint32_t{bytes[i]} << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += "==";
  } else if (rest == 2) {
    const std::uint32_t v = (std::uint32_t{bytes[i]} << 16) | (std::uint32_t{bytes[i + 1]} << 8);
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::vector<unsigned char> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw std::invalid_argument("base64 payload length is not a multiple of 4");
  std::vector<unsigned char> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t v = 0;
    int pad = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      const char c = text[i + j];
      int d = 0;
      if (c == '=') {
        ++pad;
      } else {
        d = decode_char(c);
        if (d < 0 || pad > 0) throw std::invalid_argument("invalid base64 payload");
      }
      v = (v << 6) | static_cast<std::uint32_t>(d);
    }
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
    if (pad < 2) out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
    if (pad < 1) out.push_back(static_cast<unsigned char>(v & 0xFF));
  }
  return out;
}

std::string write_matrix_json(const LabeledMatrix& matrix) {
  Json doc;
  doc["format"] = "chm-matrix";
  doc["version"] = kMatrixFormatVersion;
  doc["kind"] = matrix.kind;
  doc["omega_labels"] = matrix.row_omegas;
  if (const auto* ks = std::get_if<std::vector<HarmonicIndex>>(&matrix.col_labels)) {
    Json labels = Json::array();
    for (const auto& k : *ks) labels.push_back(k_label_json(k));
    doc["k_labels"] = labels;
  } else {
    doc["col_omega_labels"] = std::get<std::vector<int>>(matrix.col_labels);
  }
  doc["shape"] = {matrix.values.rows(), matrix.values.cols()};
  if (!matrix.mask.empty()) doc["mask"] = matrix.mask;
  doc["provenance"] = matrix.provenance;
  doc["encoding"] = "base64-f64le-reim-rowmajor";
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(matrix.values.size()) * 2);
  for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
      flat.push_back(matrix.values(i, j).real());
      flat.push_back(matrix.values(i, j).imag());
    }
  }
  doc["payload"] = base64_encode(
      std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(flat.data()), flat.size() * sizeof(double)));
  return doc.dump(1);
}

LabeledMatrix read_matrix_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix JSON does not parse: ") + e.what());
  }
  if (doc.value("format", "") != "chm-matrix" || doc.value("version", 0) != kMatrixFormatVersion) {
    throw std::invalid_argument("not a chm-matrix version 1 document");
  }
  LabeledMatrix m;
  m.kind = doc.value("kind", "");
  m.row_omegas = doc.at("omega_labels").get<std::vector<int>>();
  if (doc.contains("k_labels")) {
    std::vector<HarmonicIndex> ks;
    for (const Json& j : doc["k_labels"]) ks.push_back(k_label_from_json(j));
    m.col_labels = std::move(ks);
  } else {
    m.col_labels = doc.at("col_omega_labels").get<std::vector<int>>();
  }
  if (doc.contains("mask")) m.mask = doc["mask"].get<std::vector<bool>>();
  m.provenance = doc.value("provenance", Json::object());
  const auto rows = doc.at("shape").at(0).get<Eigen::Index>();
  const auto cols = doc.at("shape").at(1).get<Eigen::Index>();
  const auto bytes = base64_decode(doc.at("payload").get<std::string>());
  if (bytes.size() != static_cast<std::size_t>(rows * cols) * 2 * sizeof(double)) {
    throw std::invalid_argument("matrix payload size does not match its shape");
  }
  m.values.resize(rows, cols);
  const auto* p = bytes.data();
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0.0;
      double im = 0.0;
      std::memcpy(&re, p, sizeof(double));
      std::memcpy(&im, p + sizeof(double), sizeof(double));
      p += 2 * sizeof(double);
      m.values(i, j) = {re, im};
    }
  }
  return m;
}

LabeledMatrix to_labeled(const CMatrix& c) {
  LabeledMatrix m;
  m.kind = "C";
  m.row_omegas = c.omegas;
  m.col_labels = c.ks;
  m.values = c.values;
  m.provenance = c.provenance;
  m.provenance["num_params"] = c.num_params;
  return m;
}

CMatrix cmatrix_from_labeled(const LabeledMatrix& m) {
  const auto* ks = std::get_if<std::vector<HarmonicIndex>>(&m.col_labels);
  if (ks == nullptr) throw std::invalid_argument("matrix has no k column labels");
  CMatrix c;
  c.omegas = m.row_omegas;
  c.ks = *ks;
  c.values = m.values;
  c.provenance = m.provenance;
  c.num_params = m.provenance.value("num_params", std::size_t{0});
  c.provenance.erase("num_params");
  return c;
}

std::string heatmap_csv(const LabeledMatrix& matrix) {
  std::ostringstream os;
  os.precision(17);
  os << "row,col,re,im,abs\n";
  for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
      os << matrix.row_omegas[static_cast<std::size_t>(i)] << ',';
      if (const auto* ks = std::get_if<std::vector<HarmonicIndex>>(&matrix.col_labels)) {
        os << (*ks)[static_cast<std::size_t>(j)].str();
      } else {
        os << std::get<std::vector<int>>(matrix.col_labels)[static_cast<std::size_t>(j)];
      }
      const auto v = matrix.values(i, j);
      os << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
    }
  }
  return os.str();
}

}  // namespace chm
