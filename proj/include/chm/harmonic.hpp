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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chm {

/// Parameter harmonic k in {-1, 0, 1}^m stored sparsely as (index, sign)
/// pairs sorted by index; psi_k(theta) = exp(i k . theta).
class HarmonicIndex {
 public:
  using Entry = std::pair<std::uint32_t, std::int8_t>;

  HarmonicIndex() = default;
  /// Entries may come in any order; zero signs are dropped. Throws on
  /// duplicate indices or |sign| > 1.
  explicit HarmonicIndex(std::vector<Entry> entries);
  static HarmonicIndex from_dense(std::span<const int> k);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t weight() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  int at(std::size_t index) const;
  std::vector<int> to_dense(std::size_t m) const;
  HarmonicIndex negated() const;
  int dot(const HarmonicIndex& other) const;
  /// Largest parameter index + 1 (0 for k = 0).
  std::size_t min_dimension() const;

  /// exp(i k . theta).
  std::complex<double> character(std::span<const double> theta) const;
  /// Sum_a k_a theta_a.
  double phase(std::span<const double> theta) const;

  /// e.g. "0", "+3", "-0+2".
  std::string str() const;

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;

 private:
  std::vector<Entry> entries_;
};

struct HarmonicIndexHash {
  std::size_t operator()(const HarmonicIndex& k) const noexcept;
};

/// Canonical column order: Hamming weight, then the sorted position list
/// lexicographically, then the sign pattern lexicographically (-1 before +1).
bool canonical_less(const HarmonicIndex& a, const HarmonicIndex& b);

/// Truncated harmonic support used for Monte-Carlo estimation of C.
struct TruncatedK {
  std::size_t m = 0;
  std::size_t hamming = 0;
  std::size_t cap = 0;
  /// Highest weight class included in full.
  std::size_t complete_weight = 0;
  /// True when the cap cut a weight class short.
  bool capped = false;
  std::vector<HarmonicIndex> indices;

  std::size_t size() const { return indices.size(); }
  /// k = 0 is always first.
  static constexpr std::size_t zero_index() { return 0; }
};

inline constexpr std::size_t kDefaultKCap = 20000;

/// All k in {-1,0,1}^m with weight <= h in canonical order. Whole weight
/// classes are taken while they fit under `cap`; the first class that does
/// not fit is filled by whole position groups (all 2^w sign patterns of one
/// support, so k and -k stay together) until the next group would exceed
/// the cap.
TruncatedK enumerate_K(std::size_t m, std::size_t h, std::size_t cap = kDefaultKCap);

/// sum_{w<=h} binom(m, w) 2^w, saturating at UINT64_MAX.
std::uint64_t count_K(std::size_t m, std::size_t h);

}  // namespace chm
