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

#include "chm/estimation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chm/errors.hpp"
#include "chm/parallel.hpp"
#include "chm/simulator.hpp"
#include "chm/spectral.hpp"

namespace chm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_range(const SampleEnsemble& ensemble, SampleRange range) {
  if (range.begin > range.end || range.end > ensemble.count) {
    throw std::out_of_range("sample range [" + std::to_string(range.begin) + ", " + std::to_string(range.end) +
                            ") outside the ensemble of " + std::to_string(ensemble.count));
  }
}

std::size_t num_chunks(std::size_t count) { return (count + kSampleChunk - 1) / kSampleChunk; }

}  // namespace

double uniform_angle(std::uint64_t seed, std::uint64_t sample, std::uint64_t coord) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ sample) ^ (coord * 0xD1B54A32D192ED03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53 * kTwoPi;
}

std::vector<double> sample_theta(const SampleEnsemble& ensemble, std::uint64_t s, std::size_t m) {
  if (s >= ensemble.count) {
    throw std::out_of_range("sample " + std::to_string(s) + " >= S=" + std::to_string(ensemble.count));
  }
  std::vector<double> theta(m);
  for (std::size_t a = 0; a < m; ++a) theta[a] = uniform_angle(ensemble.seed, s, a);
  return theta;
}

// ---------------------------------------------------------------------------

DftPlan::DftPlan(std::vector<int> omegas, std::size_t n_x) : omegas_(std::move(omegas)), n_x_(n_x) {
  int max_abs = 0;
  for (int w : omegas_) max_abs = std::max(max_abs, std::abs(w));
  if (n_x_ <= 2 * static_cast<std::size_t>(max_abs)) {
    throw ValidationError("n_x=" + std::to_string(n_x_) + " aliases: need n_x > 2*omega_max = " +
                          std::to_string(2 * max_abs));
  }
  twiddle_.resize(n_x_);
  for (std::size_t t = 0; t < n_x_; ++t) {
    const double phase = -kTwoPi * static_cast<double>(t) / static_cast<double>(n_x_);
    twiddle_[t] = {std::cos(phase), std::sin(phase)};
  }
}

double DftPlan::grid_point(std::size_t j) const { return kTwoPi * static_cast<double>(j) / static_cast<double>(n_x_); }

void DftPlan::transform(std::span<const double> f, std::span<std::complex<double>> a) const {
  const auto n = static_cast<long long>(n_x_);
  for (std::size_t r = 0; r < omegas_.size(); ++r) {
    const long long w = ((omegas_[r] % n) + n) % n;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n_x_; ++j) acc += f[j] * twiddle_[static_cast<std::size_t>((w * static_cast<long long>(j)) % n)];
    a[r] = acc / static_cast<double>(n_x_);
  }
}

VectorC dft_coefficients(const Circuit& circuit, std::span<const double> theta, std::size_t n_x) {
  const DftPlan plan(frequency_set(circuit).omegas, n_x);
  std::vector<double> f(n_x);
  for (std::size_t j = 0; j < n_x; ++j) f[j] = expectation(circuit, plan.grid_point(j), theta);
  VectorC a(static_cast<Eigen::Index>(plan.omegas().size()));
  plan.transform(f, {a.data(), static_cast<std::size_t>(a.size())});
  return a;
}

MatrixC coefficient_samples(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                            std::size_t threads) {
  check_range(ensemble, range);
  const DftPlan plan(frequency_set(circuit).omegas, n_x);
  const auto rows = static_cast<Eigen::Index>(plan.omegas().size());
  MatrixC out(rows, static_cast<Eigen::Index>(range.size()));
  parallel_for(range.size(), threads, [&](std::size_t i) {
    const std::vector<double> theta = sample_theta(ensemble, range.begin + i, circuit.num_params());
    const BoundCircuit bound(circuit, theta);
    std::vector<double> f(n_x);
    for (std::size_t j = 0; j < n_x; ++j) f[j] = bound.value(plan.grid_point(j));
    plan.transform(f, {out.col(static_cast<Eigen::Index>(i)).data(), static_cast<std::size_t>(rows)});
  });
  return out;
}

// ---------------------------------------------------------------------------

CMatrix estimate_C_from_samples(const MatrixC& samples, std::vector<int> omegas, std::size_t num_params,
                                const SampleEnsemble& ensemble, SampleRange range, const TruncatedK& K,
                                std::size_t n_x, std::size_t threads) {
  check_range(ensemble, range);
  if (static_cast<std::uint64_t>(samples.cols()) != range.size() ||
      static_cast<std::size_t>(samples.rows()) != omegas.size()) {
    throw std::invalid_argument("coefficient samples do not match the range or the frequency set");
  }
  if (range.size() == 0) throw ValidationError("C estimation needs at least one sample");
  for (const HarmonicIndex& k : K.indices) {
    if (k.min_dimension() > num_params) throw std::invalid_argument("K refers to parameters beyond m");
  }
  const std::size_t S = range.size();
  const std::size_t m = num_params;
  const auto rows = samples.rows();

  // e^{-i theta_a} per sample, reused by every column.
  std::vector<std::complex<double>> factors(S * m);
  parallel_for(S, threads, [&](std::size_t i) {
    for (std::size_t a = 0; a < m; ++a) {
      const double t = uniform_angle(ensemble.seed, range.begin + i, a);
      factors[i * m + a] = {std::cos(t), -std::sin(t)};
    }
  });

  constexpr std::size_t kBlock = 256;
  const std::size_t ncols = K.size();
  const std::size_t nblocks = (ncols + kBlock - 1) / kBlock;
  MatrixC values = MatrixC::Zero(rows, static_cast<Eigen::Index>(ncols));
  parallel_for(nblocks, threads, [&](std::size_t b) {
    const std::size_t c0 = b * kBlock;
    const std::size_t c1 = std::min(ncols, c0 + kBlock);
    const auto width = static_cast<Eigen::Index>(c1 - c0);
    PairwiseAccumulator<MatrixC> acc;
    for (std::size_t chunk = 0; chunk < num_chunks(S); ++chunk) {
      MatrixC partial = MatrixC::Zero(rows, width);
      const std::size_t s1 = std::min(S, (chunk + 1) * kSampleChunk);
      for (std::size_t i = chunk * kSampleChunk; i < s1; ++i) {
        const std::complex<double>* f = &factors[i * m];
        const std::complex<double>* a = samples.col(static_cast<Eigen::Index>(i)).data();
        for (std::size_t c = c0; c < c1; ++c) {
          std::complex<double> phi{1.0, 0.0};
          for (const auto& [idx, sign] : K.indices[c].entries()) phi *= sign > 0 ? f[idx] : std::conj(f[idx]);
          std::complex<double>* out = partial.col(static_cast<Eigen::Index>(c - c0)).data();
          for (Eigen::Index r = 0; r < rows; ++r) out[r] += a[r] * phi;
        }
      }
      acc.push(std::move(partial));
    }
    values.middleCols(static_cast<Eigen::Index>(c0), width) = std::move(acc).result() / static_cast<double>(S);
  });

  CMatrix c;
  c.omegas = std::move(omegas);
  c.ks = K.indices;
  c.num_params = num_params;
  c.values = std::move(values);
  c.provenance = Json{{"method", "mc"},
                      {"params",
                       Json{{"seed", ensemble.seed},
                            {"S", ensemble.count},
                            {"split", range.to_json()},
                            {"S_C", S},
                            {"h", K.hamming},
                            {"cap", K.cap},
                            {"K_size", K.size()},
                            {"K_capped", K.capped},
                            {"n_x", n_x}}}};
  return c;
}

CMatrix estimate_C(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, const TruncatedK& K,
                   std::size_t n_x, std::size_t threads) {
  if (K.m != circuit.num_params()) throw std::invalid_argument("K was enumerated for a different m");
  const MatrixC samples = coefficient_samples(circuit, ensemble, range, n_x, threads);
  return estimate_C_from_samples(samples, frequency_set(circuit).omegas, circuit.num_params(), ensemble, range, K,
                                 n_x, threads);
}

// ---------------------------------------------------------------------------

namespace {

/// (1/S) sum over columns of B B^dagger, chunked and pairwise combined.
MatrixC chunked_gram(const MatrixC& b) {
  const auto S = static_cast<std::size_t>(b.cols());
  PairwiseAccumulator<MatrixC> acc;
  for (std::size_t chunk = 0; chunk < num_chunks(S); ++chunk) {
    const std::size_t s0 = chunk * kSampleChunk;
    const std::size_t w = std::min(S, s0 + kSampleChunk) - s0;
    const auto block = b.middleCols(static_cast<Eigen::Index>(s0), static_cast<Eigen::Index>(w));
    acc.push(block * block.adjoint());
  }
  if (acc.empty()) return MatrixC::Zero(b.rows(), b.rows());
  return std::move(acc).result() / static_cast<double>(S);
}

}  // namespace

VectorC mc_mean(const MatrixC& samples) {
  const auto S = static_cast<std::size_t>(samples.cols());
  if (S == 0) throw ValidationError("mean of zero samples");
  PairwiseAccumulator<VectorC> acc;
  for (std::size_t chunk = 0; chunk < num_chunks(S); ++chunk) {
    const std::size_t s0 = chunk * kSampleChunk;
    const std::size_t w = std::min(S, s0 + kSampleChunk) - s0;
    acc.push(samples.middleCols(static_cast<Eigen::Index>(s0), static_cast<Eigen::Index>(w)).rowwise().sum());
  }
  return std::move(acc).result() / static_cast<double>(S);
}

VectorR mc_variance(const MatrixC& samples) {
  if (samples.cols() < 2) throw ValidationError("variance needs at least two samples");
  const VectorC mean = mc_mean(samples);
  const MatrixC centred = samples.colwise() - mean;
  const auto S = static_cast<std::size_t>(samples.cols());
  PairwiseAccumulator<VectorR> acc;
  for (std::size_t chunk = 0; chunk < num_chunks(S); ++chunk) {
    const std::size_t s0 = chunk * kSampleChunk;
    const std::size_t w = std::min(S, s0 + kSampleChunk) - s0;
    acc.push(centred.middleCols(static_cast<Eigen::Index>(s0), static_cast<Eigen::Index>(w)).cwiseAbs2().rowwise().sum());
  }
  return std::move(acc).result() / static_cast<double>(S);
}

MatrixC mc_covariance(const MatrixC& samples) {
  if (samples.cols() < 2) throw ValidationError("covariance needs at least two samples");
  const VectorC mean = mc_mean(samples);
  return chunked_gram(samples.colwise() - mean);
}

MatrixC mc_second_moment(const MatrixC& samples) {
  if (samples.cols() < 1) throw ValidationError("second moment needs at least one sample");
  return chunked_gram(samples);
}

VectorR mc_variance(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                    std::size_t threads) {
  return mc_variance(coefficient_samples(circuit, ensemble, range, n_x, threads));
}

MatrixC mc_covariance(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                      std::size_t threads) {
  return mc_covariance(coefficient_samples(circuit, ensemble, range, n_x, threads));
}

// ---------------------------------------------------------------------------

MatrixC coefficient_jacobian(const Circuit& circuit, std::span<const double> theta, const DftPlan& plan) {
  const std::size_t n_x = plan.grid_size();
  const std::size_t m = circuit.num_params();
  std::vector<double> grads(n_x * m);  // [a][j]
  const BoundCircuit bound(circuit, theta);
  std::vector<double> g(m);
  for (std::size_t j = 0; j < n_x; ++j) {
    bound.jacobian(plan.grid_point(j), g);
    for (std::size_t a = 0; a < m; ++a) grads[a * n_x + j] = g[a];
  }
  const auto rows = static_cast<Eigen::Index>(plan.omegas().size());
  MatrixC x(rows, static_cast<Eigen::Index>(m));
  for (std::size_t a = 0; a < m; ++a) {
    plan.transform({&grads[a * n_x], n_x}, {x.col(static_cast<Eigen::Index>(a)).data(), static_cast<std::size_t>(rows)});
  }
  return x;
}

MatrixC mc_jacobian_gram(const Circuit& circuit, const SampleEnsemble& ensemble, SampleRange range, std::size_t n_x,
                         std::size_t threads) {
  check_range(ensemble, range);
  if (range.size() == 0) throw ValidationError("Jacobian Gram needs at least one sample");
  const DftPlan plan(frequency_set(circuit).omegas, n_x);
  const auto rows = static_cast<Eigen::Index>(plan.omegas().size());
  const std::size_t S = range.size();
  PairwiseAccumulator<MatrixC> acc;
  for (std::size_t chunk = 0; chunk < num_chunks(S); ++chunk) {
    const std::size_t s0 = chunk * kSampleChunk;
    const std::size_t w = std::min(S, s0 + kSampleChunk) - s0;
    std::vector<MatrixC> xs(w);
    parallel_for(w, threads, [&](std::size_t i) {
      const std::vector<double> theta = sample_theta(ensemble, range.begin + s0 + i, circuit.num_params());
      xs[i] = coefficient_jacobian(circuit, theta, plan);
    });
    MatrixC partial = MatrixC::Zero(rows, rows);
    for (const MatrixC& x : xs) partial.noalias() += x * x.adjoint();
    acc.push(std::move(partial));
  }
  return std::move(acc).result() / static_cast<double>(S);
}

}  // namespace chm
