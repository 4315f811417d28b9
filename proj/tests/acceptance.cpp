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

// Acceptance driver: one PASS/FAIL line per primary criterion, exit code 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "chm/estimation.hpp"
#include "chm/experiments.hpp"
#include "chm/pauli_prop.hpp"
#include "chm/simulator.hpp"
#include "chm/stats.hpp"

namespace {

using namespace chm;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

Line exact_oracle() {
  OracleOptions opts;
  opts.exact_only = true;
  const OracleReport r = run_analytic_suite(opts);
  std::string failed;
  for (const auto& c : r.checks) {
    if (!c.passed) failed += " " + c.name;
  }
  const bool ok = r.passed() && r.seconds < 10.0;
  return {"1", "exact-oracle identity suite", ok,
          std::to_string(r.checks.size()) + " checks, " + fmt(r.seconds, 3) + " s" +
              (failed.empty() ? "" : ", failed:" + failed)};
}

Line character_orthogonality() {
  constexpr std::size_t m = 18;
  constexpr std::uint64_t samples = 100000;
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> sign(-1, 1);
  std::vector<std::pair<HarmonicIndex, HarmonicIndex>> pairs;
  for (int p = 0; p < 50; ++p) {
    std::vector<int> k(m), l(m);
    for (auto& v : k) v = sign(rng);
    for (auto& v : l) v = sign(rng);
    // Every fifth pair is diagonal so both sides of the delta are exercised.
    if (p % 5 == 0) l = k;
    pairs.emplace_back(HarmonicIndex::from_dense(k), HarmonicIndex::from_dense(l));
  }
  const SampleEnsemble ens{77, samples};
  std::vector<cplx> acc(pairs.size());
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto theta = sample_theta(ens, s, m);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      acc[p] += std::polar(1.0, pairs[p].first.phase(theta) - pairs[p].second.phase(theta));
    }
  }
  double worst = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const cplx delta = pairs[p].first == pairs[p].second ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(acc[p] / static_cast<double>(samples) - delta));
  }
  return {"2", "character orthogonality (m=18, 1e5 samples, 50 pairs)", worst <= 0.02,
          "max |E - delta| = " + fmt(worst)};
}

struct DeskRun {
  Json variance;
  Json correlation;
  Json qntk;
  double seconds = 0.0;
};

DeskRun desk_run() {
  ExperimentConfig c = ExperimentConfig::desk_preset();
  c.family = Family::kYzyEnt;
  c.encoder = PauliLetter::X;
  c.layers = 1;
  c.depths = {1, 2, 3, 4};
  c.seed = 7;
  c.threads = 1;
  const auto t0 = Clock::now();
  const Artifacts a = run_pipeline(c, [](const std::string& msg) { std::fprintf(stderr, "  %s\n", msg.c_str()); });
  DeskRun r;
  r.seconds = seconds_since(t0);
  r.variance = a.report("report_variance.json");
  r.correlation = a.report("report_correlation.json");
  r.qntk = a.report("report_qntk.json");
  return r;
}

Line variance_identity(const DeskRun& run) {
  bool ok = run.seconds < 1800.0;
  std::string detail;
  for (const Json& d : run.variance["depths"]) {
    const std::size_t depth = d["depth"].get<std::size_t>();
    if (depth > 3) continue;
    const double r = d["pearson"].is_null() ? 0.0 : d["pearson"].get<double>();
    ok = ok && r >= 0.95;
    detail += "d" + std::to_string(depth) + " r=" + fmt(r, 5) + " ";
  }
  // Same depth-1 run with K cut at weight 3 instead of the full cube.
  ExperimentConfig c = ExperimentConfig::desk_preset();
  c.pipeline = Pipeline::kVariance;
  c.depths = {1};
  c.hamming = 3;
  c.seed = 7;
  const Json v = run_pipeline(c).report("report_variance.json");
  detail += "[d1 with h=3: r=" + fmt(v["depths"][0]["pearson"].get<double>(), 5) + "] ";
  return {"3", "variance identity (yzy-ent, n=4, S=20000, h=full at d=1, 3 above)", ok,
          detail + "(all pipelines d=1..4 in " + fmt(run.seconds, 4) + " s)"};
}

Line structural(const DeskRun& run) {
  std::string detail;
  // (a) no-entangler support.
  ExperimentConfig a;
  a.pipeline = Pipeline::kVariance;
  a.family = Family::kYzyNoEnt;
  a.qubits = 4;
  a.depths = {1, 2, 3, 4};
  a.samples = 4000;
  a.seed = 11;
  const Json va = run_pipeline(a).report("report_variance.json");
  bool ok_a = true;
  std::string supports;
  for (const Json& d : va["depths"]) {
    for (const char* key : {"support_mc", "support_c"}) {
      const Json& sup = d[key];
      for (const Json& w : sup) ok_a = ok_a && std::abs(w.get<int>()) <= 1;
      ok_a = ok_a && !sup.empty() && sup.front() == -1 && sup.back() == 1;
    }
    supports += " " + d["support_mc"].dump();
  }
  detail += std::string("(a) ") + (ok_a ? "ok" : "FAIL") + ", yzy-noent support" + supports;

  // (b) odd frequencies of circuits 16/17.
  bool ok_b = true;
  for (Family f : {Family::kCircuit16, Family::kCircuit17}) {
    ExperimentConfig b = a;
    b.family = f;
    b.encoder = PauliLetter::Y;
    b.depths = {3};
    const Json vb = run_pipeline(b).report("report_variance.json");
    const double odd = vb["depths"][0]["odd_max_rel_var_mc"].get<double>();
    ok_b = ok_b && odd < b.mask_threshold;
    detail += "; (b) " + family_name(f) + " odd max rel var " + fmt(odd, 3);
  }
  detail += ok_b ? " ok" : " FAIL";

  // (c) decreasing mean off-diagonal.
  bool ok_c = true;
  double prev = std::numeric_limits<double>::infinity();
  detail += "; (c) mean_offdiag_mc";
  for (const Json& d : run.correlation["depths"]) {
    const double v = d["mean_offdiag_mc"].get<double>();
    ok_c = ok_c && v < prev;
    prev = v;
    detail += " " + fmt(v, 3);
  }
  detail += ok_c ? " ok" : " FAIL";
  return {"4", "structural claims", ok_a && ok_b && ok_c, detail};
}

Line correlation_agreement(const DeskRun& run) {
  bool ok = true;
  std::string detail;
  for (const Json& d : run.correlation["depths"]) {
    const std::size_t depth = d["depth"].get<std::size_t>();
    if (depth > 3) continue;
    const double e = d["eps_f"].get<double>();
    const double a = d["cosine"].get<double>();
    ok = ok && e <= 0.1 && a >= 0.9;
    detail += "d" + std::to_string(depth) + " eps_F=" + fmt(e, 3) + " A=" + fmt(a, 4) + " ";
  }
  return {"5", "correlation agreement (eps_F <= 0.1, A >= 0.9)", ok, detail};
}

Line qntk_agreement(const DeskRun& run) {
  bool ok = true;
  std::string detail;
  for (const Json& d : run.qntk["depths"]) {
    const std::size_t depth = d["depth"].get<std::size_t>();
    if (depth > 3) continue;
    const double a = d["cosine"].get<double>();
    const double ratio = d["eps_f_ratio"].is_null() ? 0.0 : d["eps_f_ratio"].get<double>();
    ok = ok && a >= 0.85 && ratio > 1.0;
    detail += "d" + std::to_string(depth) + " A=" + fmt(a, 4) + " eps_F=" + fmt(d["eps_f"].get<double>(), 3) +
              " ratio=" + fmt(ratio, 3) + " ";
  }
  return {"6", "averaged QNTK agreement (A >= 0.85, eps_F above correlation)", ok, detail};
}

Line pointwise_kernel() {
  std::vector<Circuit> circuits{analytic_circuit()};
  for (std::uint64_t s = 0; s < 5; ++s) circuits.push_back(random_two_qubit_circuit(1000 + s));
  std::vector<double> xs(8);
  for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / 8.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (const Circuit& c : circuits) {
    const CMatrix C = exact_C(c);
    const MatrixC V = design_matrix(C.omegas, xs);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> theta(c.num_params());
      for (auto& v : theta) v = u(rng);
      const MatrixC K = data_qntk(V, H_kernel(C, theta));
      std::vector<std::vector<double>> jac;
      for (double x : xs) jac.push_back(jacobian(c, x, theta));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
          double g = 0.0;
          for (std::size_t a = 0; a < theta.size(); ++a) g += jac[i][a] * jac[j][a];
          worst = std::max(worst, std::abs(K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - g));
        }
      }
    }
  }
  return {"7", "pointwise kernel identity (6 circuits, 8-point grid, 20 theta)", worst <= 1e-8,
          "max |V H V^+ - J J^T| = " + fmt(worst, 3)};
}

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[e.path().filename().string()] = ss.str();
  }
  return out;
}

Line determinism() {
  const auto base = std::filesystem::temp_directory_path() / ("chm_accept_" + std::to_string(::getpid()));
  ExperimentConfig c;
  c.family = Family::kYzyEnt;
  c.qubits = 3;
  c.depths = {1, 2};
  c.samples = 4000;
  c.seed = 19;
  c.threads = 1;
  c.out_dir = (base / "a").string();
  (void)run_pipeline(c);
  c.threads = 3;
  c.out_dir = (base / "b").string();
  (void)run_pipeline(c);
  const auto a = read_dir(base / "a");
  const auto b = read_dir(base / "b");
  std::filesystem::remove_all(base);
  return {"8", "determinism (threads 1 vs 3, byte compare)", !a.empty() && a == b,
          std::to_string(a.size()) + " files compared"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chm acceptance criteria"};
  std::vector<std::string> expect_fail;
  app.add_option("--expect-fail", expect_fail, "Criterion ids whose failure does not fail the run")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  std::vector<Line> lines;
  auto emit = [&](Line l) {
    const bool known = std::find(expect_fail.begin(), expect_fail.end(), l.id) != expect_fail.end();
    std::printf("[%s] criterion %s: %s | %s%s\n", l.passed ? "PASS" : "FAIL", l.id.c_str(), l.title.c_str(),
                l.detail.c_str(), !l.passed && known ? " (expected failure)" : "");
    std::fflush(stdout);
    lines.push_back(std::move(l));
  };
  try {
    emit(exact_oracle());
    emit(character_orthogonality());
    const DeskRun run = desk_run();
    emit(variance_identity(run));
    emit(structural(run));
    emit(correlation_agreement(run));
    emit(qntk_agreement(run));
    emit(pointwise_kernel());
    emit(determinism());
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::size_t failed = 0;
  std::size_t unexpected = 0;
  for (const auto& l : lines) {
    if (l.passed) continue;
    ++failed;
    if (std::find(expect_fail.begin(), expect_fail.end(), l.id) == expect_fail.end()) ++unexpected;
  }
  std::printf("%zu/%zu criteria passed, %zu unexpected failure(s)\n", lines.size() - failed, lines.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
