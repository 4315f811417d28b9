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

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <thread>

#include "chm/circuit.hpp"
#include "chm/errors.hpp"
#include "chm/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw chm::ValidationError("bad integer '" + std::string(s) + "' in depth list");
  }
  return v;
}

/// "1..5", "1,2,4" or "3".
std::vector<std::size_t> parse_depths(const std::string& text) {
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t lo = parse_size(std::string_view(text).substr(0, dots));
    const std::size_t hi = parse_size(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw chm::ValidationError("empty depth range '" + text + "'");
    for (std::size_t d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.push_back(parse_size(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

chm::PauliLetter parse_axis(const std::string& s) {
  if (s == "x" || s == "X") return chm::PauliLetter::X;
  if (s == "y" || s == "Y") return chm::PauliLetter::Y;
  throw chm::ValidationError("encoder must be x or y, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chm: circuit harmonic matrices for re-uploading circuits"};
  app.require_subcommand(1);

  // --- run -----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run a Monte-Carlo pipeline and write reports");
  std::string config_path, pipeline, family, encoder, depths, out_dir;
  std::size_t qubits = 0, layers = 0, nx = 0, hamming = 0, kcap = 0, threads = 0;
  std::uint64_t samples = 0, seed = 0;
  double mask = 0.0;
  bool quiet = false;
  run->add_option("--config", config_path, "JSON config file; flags override it")->check(CLI::ExistingFile);
  auto* o_pipeline = run->add_option("--pipeline", pipeline, "variance|correlation|qntk|all");
  auto* o_family = run->add_option("--family", family, "yzy-noent|yzy-ent|circuit16|circuit17");
  auto* o_encoder = run->add_option("--encoder", encoder, "x|y");
  auto* o_qubits = run->add_option("--qubits", qubits, "number of qubits n");
  auto* o_layers = run->add_option("--layers", layers, "encoder/trainer layers L");
  auto* o_depths = run->add_option("--depths", depths, "depth list, e.g. 1..5 or 1,3");
  auto* o_samples = run->add_option("--samples", samples, "ensemble size S (even)");
  auto* o_nx = run->add_option("--nx", nx, "DFT grid size");
  auto* o_hamming = run->add_option("--hamming", hamming, "Hamming limit h of K");
  auto* o_kcap = run->add_option("--kcap", kcap, "cap on |K|");
  auto* o_seed = run->add_option("--seed", seed, "ensemble seed (required)");
  auto* o_mask = run->add_option("--mask-threshold", mask, "relative vanishing-variance threshold");
  auto* o_threads = run->add_option("--threads", threads, "worker threads");
  auto* o_out = run->add_option("--out", out_dir, "output directory");
  run->add_flag("--quiet", quiet, "no progress output");

  // --- oracle --------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "run the analytic oracle suite");
  chm::OracleOptions oopt;
  std::string oracle_json;
  bool mutate = false;
  oracle->add_option("--seed", oopt.seed, "seed for random circuits and samples");
  oracle->add_option("--samples", oopt.samples, "Monte-Carlo samples");
  oracle->add_flag("--exact-only", oopt.exact_only, "skip the Monte-Carlo identities");
  oracle->add_flag("--mutate-sin-sign", mutate, "flip every sine branch (must fail)");
  oracle->add_option("--json", oracle_json, "also write the report here");

  // --- circuit dump ----------------------------------------------------------
  auto* circuit = app.add_subcommand("circuit", "circuit utilities");
  circuit->require_subcommand(1);
  auto* dump = circuit->add_subcommand("dump", "print a family circuit as JSON");
  std::string d_family = "yzy-ent", d_encoder = "x", d_out;
  std::size_t d_qubits = 4, d_layers = 1, d_depth = 1;
  dump->add_option("--family", d_family, "circuit family");
  dump->add_option("--encoder", d_encoder, "x|y");
  dump->add_option("--qubits", d_qubits, "number of qubits");
  dump->add_option("--layers", d_layers, "layers L");
  dump->add_option("--depth", d_depth, "ansatz depth d");
  dump->add_option("--out", d_out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*run) {
      chm::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = chm::load_config_file(config_path);
      if (o_pipeline->count()) cfg.pipeline = chm::parse_pipeline(pipeline);
      if (o_family->count()) cfg.family = chm::parse_family(family);
      if (o_encoder->count()) cfg.encoder = parse_axis(encoder);
      if (o_qubits->count()) cfg.qubits = qubits;
      if (o_layers->count()) cfg.layers = layers;
      if (o_depths->count()) cfg.depths = parse_depths(depths);
      if (o_samples->count()) cfg.samples = samples;
      if (o_nx->count()) cfg.nx = nx;
      if (o_hamming->count()) cfg.hamming = hamming;
      if (o_kcap->count()) cfg.kcap = kcap;
      if (o_seed->count()) cfg.seed = seed;
      if (o_mask->count()) cfg.mask_threshold = mask;
      if (o_threads->count()) {
        cfg.threads = threads;
      } else if (config_path.empty()) {
        cfg.threads = std::max(1u, std::thread::hardware_concurrency());
      }
      if (o_out->count()) cfg.out_dir = out_dir;
      if (cfg.out_dir.empty()) throw chm::ValidationError("--out is required");
      chm::ProgressFn progress;
      if (!quiet) progress = [](const std::string& msg) { std::cerr << "[chm] " << msg << '\n'; };
      const chm::Artifacts art = chm::run_pipeline(cfg, progress);
      std::cout << "wrote " << art.files.size() << " files to " << cfg.out_dir << '\n';
      return kExitOk;
    }
    if (*oracle) {
      if (mutate) oopt.sin_branch_sign = -1.0;
      const chm::OracleReport report = chm::run_analytic_suite(oopt);
      for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << c.value << " tol=" << c.tolerance;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ')';
        std::cout << '\n';
      }
      std::cout << (report.passed() ? "oracle suite passed" : "oracle suite FAILED") << " in " << report.seconds
                << " s\n";
      if (report.seconds > 300.0) std::cerr << "warning: oracle suite exceeded its 5 minute budget\n";
      if (!oracle_json.empty()) {
        std::ofstream(oracle_json) << report.to_json().dump(2) << '\n';
      }
      return report.passed() ? kExitOk : kExitInvariant;
    }
    if (*dump) {
      const chm::Circuit c = chm::build_family(chm::parse_family(d_family), parse_axis(d_encoder), d_qubits, d_layers,
                                               d_depth);
      const std::string text = chm::circuit_to_json(c) + "\n";
      if (d_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(d_out) << text;
      }
      return kExitOk;
    }
  } catch (const chm::InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}
