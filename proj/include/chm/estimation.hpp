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
#include <cstdint>
#include <span>
#include <vector>

#include "chm/circuit.hpp"
#include "chm/cmatrix.hpp"
#include "chm/harmonic.hpp"
#include "chm/json.hpp"

namespace chm {

inline constexpr std::size_t kSampleChunk = 1024;

/// Half-open range of sample indices.
struct SampleRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const { return end - begin; }
  bool overlaps(const SampleRange& other) const { return begin < other.end && other.begin < end; }
  Json to_json() const { return Json::array({begin, end}); }
};

/// S parameter draws keyed by a seed. The first half feeds the C estimate,
/// the second half the Monte-Carlo reference.
struct SampleEnsemble {
  std::uint64_t seed = 0;
  std::uint64_t count = 0;

  SampleRange all() const { return {0, count}; }
  SampleRange c_split() const { return {0, count / 2}; }
  SampleRange mc_split() const { return {count / 2, count}; }
};

/// Uniform angle in [0, 2 pi) from a stateless hash of (seed, sample, coord).
double uniform_angle(std::uint64_t seed, std::uint64_t sample, std::uint64_t coord);

/// theta^(s) in [0, 2 pi)^m. Throws std::out_of_range if s >= S.
std::vector<double> sample_theta(const SampleEnsemble& ensemble, std::uint64_t s, std::size_t m);

/// DFT over the uniform grid x_j = 2 pi j / n_x with 1/n_x normalisation, so
/// that f(x) = sum_omega a_omega e^{i omega x} for band-limited f.
class DftPlan {
 public:
  /// Throws ValidationError unless n_x > 2 * max|omega|.
  DftPlan(std::vector<int> omegas, std::size_t n_x);

  const std::vector<int>& omegas() const { return omegas_; }
  std::size_t grid_size() const { return n_x_; }
  double grid_point(std::size_t j) const;
  /// a over omegas() from the n_x samples f(x_j).
  void transform(std::span<const double> f, std::span<std::complex<double>> a) const;

 private:
  std::vector<int> omegas_;
  std::size_t n_x_;
  std::vector<std::complex<double>> twiddle_;  // e^{-2 pi i t / n_x}
};

VectorC dft_coefficients(const Circuit& circuit, std::span<const double> theta, std::size_t n_x);

/// Column s - range.begin holds a(theta^(s)); |Omega| x |range|.
MatrixC coefficient_samples(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                            std::size_t threads = 1);

/// C_hat = (1/S_C) sum_s a(theta^(s)) e^{-i k . theta^(s)} over the given
/// range, restricted to the columns of K.
CMatrix estimate_C(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, const TruncatedK& K,
                   std::size_t n_x, std::size_t threads = 1);
/// Same from precomputed coefficient samples (columns aligned with range).
CMatrix estimate_C_from_samples(const MatrixC& samples, std::vector<int> omegas, std::size_t num_params,
                                const SampleEnsemble& ensemble, SampleRange range, const TruncatedK& K,
                                std::size_t n_x, std::size_t threads = 1);

/// Column means of coefficient samples.
VectorC mc_mean(const MatrixC& samples);
/// Per-omega centred second moment (1/S normalisation). Throws
/// ValidationError when S < 2.
VectorR mc_variance(const MatrixC& samples);
/// (1/S) sum (a - mean)(a - mean)^dagger.
MatrixC mc_covariance(const MatrixC& samples);
/// (1/S) sum a a^dagger.
MatrixC mc_second_moment(const MatrixC& samples);

VectorR mc_variance(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                    std::size_t threads = 1);
MatrixC mc_covariance(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                      std::size_t threads = 1);

/// X(theta)_{omega a} = d a_omega / d theta_a from the DFT of the simulator
/// Jacobian at the grid points; |Omega| x m.
MatrixC coefficient_jacobian(const Circuit& circuit, std::span<const double> theta, const DftPlan& plan);

/// (1/S) sum_s X(theta^(s)) X(theta^(s))^dagger.
MatrixC mc_jacobian_gram(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                         std::size_t threads = 1);

}  // namespace chm
