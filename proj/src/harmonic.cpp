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

#include "chm/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chm {

HarmonicIndex::HarmonicIndex(std::vector<Entry> entries) {
  std::erase_if(entries, [](const Entry& e) { return e.second == 0; });
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].second != 1 && entries[i].second != -1) {
      throw std::invalid_argument("harmonic index entries must be -1, 0 or +1");
    }
    if (i > 0 && entries[i].first == entries[i - 1].first) {
      throw std::invalid_argument("duplicate parameter index in harmonic index");
    }
  }
  entries_ = std::move(entries);
}

HarmonicIndex HarmonicIndex::from_dense(std::span<const int> k) {
  std::vector<Entry> entries;
  for (std::size_t a = 0; a < k.size(); ++a) {
    if (k[a] != 0) entries.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::int8_t>(k[a]));
  }
  return HarmonicIndex(std::move(entries));
}

int HarmonicIndex::at(std::size_t index) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{static_cast<std::uint32_t>(index), -2});
  return (it != entries_.end() && it->first == index) ? it->second : 0;
}

std::vector<int> HarmonicIndex::to_dense(std::size_t m) const {
  if (min_dimension() > m) throw std::out_of_range("harmonic index does not fit in dimension m");
  std::vector<int> k(m, 0);
  for (const auto& [a, s] : entries_) k[a] = s;
  return k;
}

HarmonicIndex HarmonicIndex::negated() const {
  HarmonicIndex out = *this;
  for (auto& e : out.entries_) e.second = static_cast<std::int8_t>(-e.second);
  return out;
}

int HarmonicIndex::dot(const HarmonicIndex& other) const {
  int acc = 0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      acc += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return acc;
}

std::size_t HarmonicIndex::min_dimension() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

double HarmonicIndex::phase(std::span<const double> theta) const {
  double acc = 0.0;
  for (const auto& [a, s] : entries_) acc += s * theta[a];
  return acc;
}

std::complex<double> HarmonicIndex::character(std::span<const double> theta) const {
  return std::polar(1.0, phase(theta));
}

std::string HarmonicIndex::str() const {
  if (entries_.empty()) return "0";
  std::string s;
  for (const auto& [a, sign] : entries_) {
    s += sign > 0 ? '+' : '-';
    s += std::to_string(a);
  }
  return s;
}

std::size_t HarmonicIndexHash::operator()(const HarmonicIndex& k) const noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const auto& [a, s] : k.entries()) {
    h ^= (static_cast<std::uint64_t>(a) << 1) | (s > 0 ? 1U : 0U);
    h *= 0x100000001B3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

bool canonical_less(const HarmonicIndex& a, const HarmonicIndex& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].first != eb[i].first) return ea[i].first < eb[i].first;
  }
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].second != eb[i].second) return ea[i].second < eb[i].second;
  }
  return false;
}

std::uint64_t count_K(std::size_t m, std::size_t h) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  long double binom = 1.0L;  // binom(m, w)
  for (std::size_t w = 0; w <= std::min(h, m); ++w) {
    if (w > 0) binom = binom * static_cast<long double>(m - w + 1) / static_cast<long double>(w);
    const long double cls = std::round(binom) * std::ldexp(1.0L, static_cast<int>(w));
    if (cls >= static_cast<long double>(kMax - total)) return kMax;
    total += static_cast<std::uint64_t>(cls);
  }
  return total;
}

namespace {

/// Appends all 2^w sign patterns of a support, in lexicographic order.
void append_sign_patterns(const std::vector<std::uint32_t>& support, std::vector<HarmonicIndex>& out) {
  const std::size_t w = support.size();
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << w); ++pattern) {
    std::vector<HarmonicIndex::Entry> entries(w);
    for (std::size_t j = 0; j < w; ++j) {
      const bool plus = (pattern >> (w - 1 - j)) & 1U;
      entries[j] = {support[j], static_cast<std::int8_t>(plus ? 1 : -1)};
    }
    out.emplace_back(std::move(entries));
  }
}

}  // namespace

TruncatedK enumerate_K(std::size_t m, std::size_t h, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("cap on |K| must be at least 1");
  TruncatedK out;
  out.m = m;
  out.hamming = h;
  out.cap = cap;
  out.indices.emplace_back();
  const std::size_t hmax = std::min(h, m);
  for (std::size_t w = 1; w <= hmax; ++w) {
    const std::uint64_t upto = count_K(m, w);
    const bool whole = upto != std::numeric_limits<std::uint64_t>::max() && upto <= cap;
    const std::size_t group = std::size_t{1} << w;
    if (!whole && out.indices.size() + group > cap) {
      out.capped = true;
      break;
    }
    // Iterate supports in lexicographic order.
    std::vector<std::uint32_t> support(w);
    for (std::size_t j = 0; j < w; ++j) support[j] = static_cast<std::uint32_t>(j);
    while (true) {
      if (!whole && out.indices.size() + group > cap) break;
      append_sign_patterns(support, out.indices);
      std::ptrdiff_t j = static_cast<std::ptrdiff_t>(w) - 1;
      while (j >= 0 && support[j] == m - w + static_cast<std::size_t>(j)) --j;
      if (j < 0) break;
      ++support[j];
      for (std::size_t t = static_cast<std::size_t>(j) + 1; t < w; ++t) support[t] = support[t - 1] + 1;
    }
    if (!whole) {
      out.capped = true;
      break;
    }
    out.complete_weight = w;
  }
  return out;
}

}  // namespace chm
