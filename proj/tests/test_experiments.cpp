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

#include <filesystem>
#include <fstream>

#include "chm/errors.hpp"
#include "chm/experiments.hpp"

namespace chm {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.family = Family::kYzyEnt;
  c.qubits = 2;
  c.depths = {1, 2};
  c.samples = 2000;
  c.seed = 3;
  return c;
}

TEST(Config, Defaults) {
  const ExperimentConfig c;
  EXPECT_EQ(c.qubits, 6u);
  EXPECT_EQ(c.samples, 100096u);
  EXPECT_EQ(c.depths, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(c.nx_for(Pipeline::kVariance), 128u);
  EXPECT_EQ(c.nx_for(Pipeline::kQntk), 126u);
  EXPECT_EQ(c.hamming_for(1, 18), 18u);
  EXPECT_EQ(c.hamming_for(2, 36), 3u);
  EXPECT_EQ(c.hamming_for(2, 2), 2u);
  // Seed is required.
  EXPECT_FALSE(c.problems().empty());
  EXPECT_THROW(c.validate(), ValidationError);
  const ExperimentConfig desk = ExperimentConfig::desk_preset();
  EXPECT_EQ(desk.qubits, 4u);
  EXPECT_EQ(desk.samples, 20000u);
}

TEST(Config, ValidationProblems) {
  ExperimentConfig c = small_config();
  EXPECT_TRUE(c.problems().empty());
  c.samples = 2001;
  EXPECT_EQ(c.problems().size(), 1u);
  c = small_config();
  c.nx = 8;  // 2 n L = 4 is fine
  EXPECT_TRUE(c.problems().empty());
  c.nx = 4;
  EXPECT_EQ(c.problems().size(), 1u);
  c = small_config();
  c.qubits = 1;
  EXPECT_FALSE(c.problems().empty());
  c.family = Family::kYzyNoEnt;
  EXPECT_TRUE(c.problems().empty());
}

TEST(Config, JsonApplyAndRoundTrip) {
  ExperimentConfig c;
  c.apply_json(Json::parse(R"({"pipeline":"variance","family":"circuit17","encoder":"y","qubits":4,
                               "depths":[3],"samples":1000,"seed":11,"nx":20,"hamming":2})"));
  EXPECT_EQ(c.pipeline, Pipeline::kVariance);
  EXPECT_EQ(c.family, Family::kCircuit17);
  EXPECT_EQ(c.encoder, PauliLetter::Y);
  EXPECT_EQ(c.depths, std::vector<std::size_t>{3});
  EXPECT_EQ(c.seed, std::optional<std::uint64_t>{11});
  EXPECT_EQ(c.nx, std::optional<std::size_t>{20});

  ExperimentConfig d;
  d.apply_json(c.to_json());
  EXPECT_EQ(d.to_json(), c.to_json());
  EXPECT_FALSE(c.to_json().contains("threads"));

  EXPECT_THROW(c.apply_json(Json::parse(R"({"qubitz":4})")), ValidationError);
  EXPECT_THROW(c.apply_json(Json::parse(R"({"qubits":"four"})")), ValidationError);
  EXPECT_THROW(c.apply_json(Json::parse(R"({"family":"circuit18"})")), ValidationError);
}

TEST(Config, FileDiagnosticsNameTheLine) {
  const auto path = std::filesystem::temp_directory_path() / "chm_bad_config.json";
  {
    std::ofstream out(path);
    out << "{\n  \"qubits\": 4,\n  \"seed\": ,\n}\n";
  }
  try {
    (void)load_config_file(path);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
}

TEST(Pipeline, ReportSchema) {
  const Artifacts a = run_pipeline(small_config());
  for (const char* name : {"manifest.json", "report_variance.json", "report_correlation.json", "report_qntk.json",
                           "offdiag.csv", "variance_d1.csv", "corr_c_d2.json", "corr_mc_d2.csv", "qntk_c_d1.json",
                           "qntk_mc_d2_norm.json"}) {
    EXPECT_TRUE(a.files.count(name)) << name;
  }
  const Json var = a.report("report_variance.json");
  EXPECT_EQ(var["schema"], "chm-report");
  EXPECT_EQ(var["version"], kReportSchemaVersion);
  EXPECT_EQ(var["config"]["seed"], 3);
  ASSERT_EQ(var["depths"].size(), 2u);
  EXPECT_GT(var["depths"][0]["pearson"].get<double>(), 0.9);

  const Json corr = a.report("report_correlation.json");
  for (const char* key : {"eps_f", "cosine", "mean_offdiag_c", "mean_offdiag_mc", "masked_c", "masked_mc"}) {
    EXPECT_TRUE(corr["depths"][1].contains(key)) << key;
  }
  EXPECT_EQ(corr["consecutive_mc"].size(), 1u);
  const Json qntk = a.report("report_qntk.json");
  EXPECT_TRUE(qntk["depths"][0].contains("eps_f_ratio"));

  const LabeledMatrix m = read_matrix_json(a.files.at("corr_c_d1.json"));
  EXPECT_EQ(m.provenance["estimator"], "corr_c");
  EXPECT_EQ(m.values.rows(), 5);

  const std::string& csv = a.files.at("variance_d1.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "omega,var_mc,row_energy_c,var_mc_norm,row_energy_c_norm,row_energy_c_full");
}

TEST(Pipeline, NoEntanglerSinglePearson) {
  ExperimentConfig c;
  c.pipeline = Pipeline::kVariance;
  c.family = Family::kYzyNoEnt;
  c.qubits = 1;
  c.depths = {1, 3};
  c.samples = 4000;
  c.seed = 5;
  const Json var = run_pipeline(c).report("report_variance.json");
  for (const Json& d : var["depths"]) {
    EXPECT_NEAR(d["pearson"].get<double>(), 1.0, 1e-2);
    for (const Json& w : d["support_mc"]) EXPECT_LE(std::abs(w.get<int>()), 1);
    EXPECT_EQ(d["support_mc"].front(), -1);
    EXPECT_EQ(d["support_mc"].back(), 1);
  }
}

TEST(Pipeline, ByteIdenticalAcrossThreadCounts) {
  ExperimentConfig c = small_config();
  c.depths = {2};
  c.threads = 1;
  const Artifacts a = run_pipeline(c);
  c.threads = 3;
  const Artifacts b = run_pipeline(c);
  EXPECT_EQ(a.files, b.files);
}

TEST(Pipeline, RejectsInvalidConfig) {
  ExperimentConfig c = small_config();
  c.samples = 7;
  EXPECT_THROW((void)run_pipeline(c), ValidationError);
}

}  // namespace
}  // namespace chm
