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

#include "chm/spectral.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace chm {

bool FrequencySet::contains(int omega) const { return std::binary_search(omegas.begin(), omegas.end(), omega); }

std::size_t FrequencySet::index_of(int omega) const {
  const auto it = std::lower_bound(omegas.begin(), omegas.end(), omega);
  if (it == omegas.end() || *it != omega) {
    throw std::out_of_range("frequency " + std::to_string(omega) + " is not accessible");
  }
  return static_cast<std::size_t>(it - omegas.begin());
}

std::vector<int> difference_set(std::span<const EncoderGate> block) {
  if (block.empty()) return {0};
  for (const auto& e : block) {
    if (e.axis != block.front().axis) throw std::invalid_argument("encoder block mixes Pauli axes");
  }
  // Twice the eigenvalues of sum_q P_q / 2 are n - 2j for j = 0..n.
  const int n = static_cast<int>(block.size());
  std::set<int> diffs;
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) diffs.insert(((n - 2 * j) - (n - 2 * k)) / 2);
  }
  return {diffs.begin(), diffs.end()};
}

FrequencySet minkowski_sum(const std::vector<std::vector<int>>& per_layer) {
  if (per_layer.empty()) throw std::invalid_argument("minkowski_sum needs at least one set");
  std::set<int> acc{0};
  for (const auto& layer : per_layer) {
    std::set<int> next;
    for (int a : acc) {
      for (int b : layer) next.insert(a + b);
    }
    acc.swap(next);
  }
  FrequencySet out;
  out.omegas.assign(acc.begin(), acc.end());
  out.per_layer = per_layer;
  for (auto& layer : out.per_layer) {
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
  }
  return out;
}

FrequencySet frequency_set(const Circuit& circuit) {
  std::vector<std::vector<int>> per_layer;
  for (const Layer& layer : circuit.layers()) per_layer.push_back(difference_set(layer.encoder));
  if (per_layer.empty()) per_layer.push_back({0});
  return minkowski_sum(per_layer);
}

namespace {

std::map<int, std::uint64_t> convolve_counts(const std::vector<std::vector<int>>& per_layer) {
  std::map<int, std::uint64_t> acc{{0, 1}};
  for (const auto& raw : per_layer) {
    std::set<int> layer(raw.begin(), raw.end());
    std::map<int, std::uint64_t> next;
    for (const auto& [w, c] : acc) {
      for (int d : layer) {
        auto& slot = next[w + d];
        if (slot > std::numeric_limits<std::uint64_t>::max() - c) throw std::overflow_error("redundancy overflow");
        slot += c;
      }
    }
    acc.swap(next);
  }
  return acc;
}

}  // namespace

std::uint64_t redundancy(const std::vector<std::vector<int>>& per_layer, int omega) {
  const auto counts = convolve_counts(per_layer);
  const auto it = counts.find(omega);
  return it == counts.end() ? 0 : it->second;
}

std::vector<std::uint64_t> redundancy_profile(const std::vector<std::vector<int>>& per_layer) {
  std::vector<std::uint64_t> out;
  for (const auto& [w, c] : convolve_counts(per_layer)) out.push_back(c);
  return out;
}

std::optional<std::vector<std::vector<int>>> enumerate_paths(const std::vector<std::vector<int>>& per_layer, int omega,
                                                             std::uint64_t cap) {
  if (redundancy(per_layer, omega) > cap) return std::nullopt;
  std::vector<std::vector<int>> layers;
  for (const auto& raw : per_layer) {
    std::set<int> s(raw.begin(), raw.end());
    layers.emplace_back(s.begin(), s.end());
  }
  // Reachable sums of the suffix layers[l..] prune the search.
  std::vector<std::set<int>> suffix(layers.size() + 1);
  suffix[layers.size()] = {0};
  for (std::size_t l = layers.size(); l-- > 0;) {
    for (int a : suffix[l + 1]) {
      for (int d : layers[l]) suffix[l].insert(a + d);
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto recurse = [&](auto&& self, std::size_t l, int remaining) -> void {
    if (l == layers.size()) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    for (int d : layers[l]) {
      if (!suffix[l + 1].contains(remaining - d)) continue;
      current.push_back(d);
      self(self, l + 1, remaining - d);
      current.pop_back();
    }
  };
  recurse(recurse, 0, omega);
  return out;
}

}  // namespace chm
