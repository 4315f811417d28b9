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

#include <numeric>

#include "chm/circuit.hpp"
#include "chm/estimation.hpp"
#include "chm/simulator.hpp"
#include "chm/spectral.hpp"

namespace chm {
namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v(static_cast<std::size_t>(hi - lo + 1));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

std::vector<EncoderGate> uniform_block(std::size_t n, PauliLetter axis) {
  std::vector<EncoderGate> b;
  for (std::size_t q = 0; q < n; ++q) b.push_back({axis, q});
  return b;
}

TEST(DifferenceSet, UniformBlocks) {
  EXPECT_EQ(difference_set(uniform_block(1, PauliLetter::X)), range(-1, 1));
  EXPECT_EQ(difference_set(uniform_block(2, PauliLetter::Y)), range(-2, 2));
  EXPECT_EQ(difference_set(uniform_block(6, PauliLetter::Z)), range(-6, 6));
  EXPECT_EQ(difference_set(uniform_block(6, PauliLetter::Z)).size(), 13u);
  EXPECT_EQ(difference_set({}), std::vector<int>{0});
}

TEST(DifferenceSet, MixedAxesRejected) {
  const std::vector<EncoderGate> mixed{{PauliLetter::X, 0}, {PauliLetter::Y, 1}};
  EXPECT_THROW(difference_set(mixed), std::invalid_argument);
}

TEST(MinkowskiSum, Examples) {
  EXPECT_EQ(minkowski_sum({range(-1, 1)}).omegas, range(-1, 1));
  EXPECT_EQ(minkowski_sum({range(-1, 1), range(-1, 1)}).omegas, range(-2, 2));
  EXPECT_EQ(minkowski_sum({range(-6, 6), range(-6, 6)}).omegas, range(-12, 12));
  const FrequencySet f = minkowski_sum({range(-1, 1), range(-2, 2)});
  EXPECT_EQ(f.max_frequency(), 3);
  EXPECT_TRUE(f.contains(-3));
  EXPECT_FALSE(f.contains(4));
  EXPECT_EQ(f.index_of(0), 3u);
  EXPECT_THROW((void)f.index_of(9), std::out_of_range);
}

TEST(FrequencySet, FromFamilies) {
  const Circuit c = build_family(Family::kYzyEnt, PauliLetter::X, 3, 2, 1);
  const FrequencySet f = frequency_set(c);
  EXPECT_EQ(f.omegas, range(-6, 6));
  ASSERT_EQ(f.per_layer.size(), 2u);
  EXPECT_EQ(f.per_layer[0], range(-3, 3));
}

TEST(Redundancy, Examples) {
  const std::vector<std::vector<int>> one{range(-1, 1)};
  const std::vector<std::vector<int>> two{range(-1, 1), range(-1, 1)};
  EXPECT_EQ(redundancy(one, 1), 1u);
  EXPECT_EQ(redundancy(two, 0), 3u);
  EXPECT_EQ(redundancy(two, 2), 1u);
  EXPECT_EQ(redundancy(two, 3), 0u);
  EXPECT_EQ(redundancy_profile(two), (std::vector<std::uint64_t>{1, 2, 3, 2, 1}));

  const auto paths = enumerate_paths(two, 0);
  ASSERT_TRUE(paths.has_value());
  const std::vector<std::vector<int>> expected{{-1, 1}, {0, 0}, {1, -1}};
  EXPECT_EQ(*paths, expected);
  EXPECT_FALSE(enumerate_paths(two, 0, 2).has_value());
}

TEST(Redundancy, SumAndSymmetry) {
  const std::vector<std::vector<int>> layers{range(-2, 2), range(-1, 1), range(-3, 3)};
  const auto profile = redundancy_profile(layers);
  EXPECT_EQ(std::accumulate(profile.begin(), profile.end(), std::uint64_t{0}), 5u * 3u * 7u);
  for (std::size_t i = 0; i < profile.size(); ++i) EXPECT_EQ(profile[i], profile[profile.size() - 1 - i]);
}

TEST(Bandwidth, CoefficientsOutsideOmegaVanish) {
  // DFT on a wider band: everything beyond n L must be numerically zero.
  for (Family f : {Family::kYzyEnt, Family::kCircuit16}) {
    const Circuit c = build_family(f, PauliLetter::Y, 3, 1, 2);
    const std::vector<int> wide = range(-8, 8);
    const DftPlan plan(wide, 64);
    const SampleEnsemble ens{4, 6};
    for (std::uint64_t s = 0; s < ens.count; ++s) {
      const auto theta = sample_theta(ens, s, c.num_params());
      std::vector<double> fx(64);
      for (std::size_t j = 0; j < 64; ++j) fx[j] = expectation(c, plan.grid_point(j), theta);
      std::vector<std::complex<double>> a(wide.size());
      plan.transform(fx, a);
      for (std::size_t i = 0; i < wide.size(); ++i) {
        if (std::abs(wide[i]) > 3) EXPECT_LT(std::abs(a[i]), 1e-8);
      }
    }
  }
}

}  // namespace
}  // namespace chm
