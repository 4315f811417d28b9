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
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chm/circuit.hpp"
#include "chm/harmonic.hpp"
#include "chm/json.hpp"
#include "chm/stats.hpp"

namespace chm {

inline constexpr int kReportSchemaVersion = 1;

enum class Pipeline { kVariance, kCorrelation, kQntk, kAll };

Pipeline parse_pipeline(std::string_view name);
std::string pipeline_name(Pipeline pipeline);

struct ExperimentConfig {
  Pipeline pipeline = Pipeline::kAll;
  Family family = Family::kYzyEnt;
  PauliLetter encoder = PauliLetter::X;
  std::size_t qubits = 6;
  std::size_t layers = 1;
  std::vector<std::size_t> depths{1, 2, 3, 4, 5};
  std::uint64_t samples = 100096;
  /// Grid size; unset means 128 for variance and 126 for correlation/QNTK.
  std::optional<std::size_t> nx;
  /// Hamming limit; unset means 3 for d > 1 and m (cap-limited) for d = 1.
  std::optional<std::size_t> hamming;
  std::size_t kcap = kDefaultKCap;
  std::optional<std::uint64_t> seed;
  double mask_threshold = kDefaultMaskThreshold;
  std::size_t threads = 1;
  std::string out_dir;

  /// n = 4, S = 20000, depths 1..3.
  static ExperimentConfig desk_preset();

  /// Overrides fields present in `j`; unknown keys and bad types raise
  /// ValidationError naming the key.
  void apply_json(const Json& j);
  Json to_json() const;
  /// Empty when the configuration is usable.
  std::vector<std::string> problems() const;
  /// Throws ValidationError listing every problem.
  void validate() const;

  std::size_t nx_for(Pipeline p) const;
  std::size_t hamming_for(std::size_t depth, std::size_t m) const;
};

/// Reads a JSON config file; parse errors report line and column.
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Named output files, in memory until written.
struct Artifacts {
  std::map<std::string, std::string> files;

  void write(const std::filesystem::path& dir) const;
  Json report(const std::string& name) const;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Runs the configured pipeline(s). Every depth of every pipeline adds its
/// section to report_<pipeline>.json; matrices and CSVs go alongside.
/// Writes to config.out_dir when it is non-empty.
Artifacts run_pipeline(const ExperimentConfig& config, const ProgressFn& progress = {});

// ---------------------------------------------------------------------------
// Analytic oracle suite

struct OracleCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct OracleOptions {
  std::uint64_t seed = 20260101;
  /// Monte-Carlo sample count for the estimator identities.
  std::uint64_t samples = 50000;
  /// Mutation hook forwarded to the propagation (anything but +1 must fail).
  double sin_branch_sign = 1.0;
  /// Skip the Monte-Carlo identities (exact checks only).
  bool exact_only = false;
  std::size_t threads = 1;
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  double seconds = 0.0;

  bool passed() const;
  Json to_json() const;
};

/// 1-qubit analytic circuit: Rx(x) encoder, Ry(theta) trainable, Z observable,
/// f = cos x cos theta.
Circuit analytic_circuit();
/// Random 2-qubit single-use circuit with CNOTs.
Circuit random_two_qubit_circuit(std::uint64_t seed);

OracleReport run_analytic_suite(const OracleOptions& options = {});

}  // namespace chm
