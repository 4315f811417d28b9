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

#include "chm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "chm/cmatrix.hpp"
#include "chm/errors.hpp"
#include "chm/estimation.hpp"
#include "chm/spectral.hpp"

namespace chm {

Pipeline parse_pipeline(std::string_view name) {
  if (name == "variance") return Pipeline::kVariance;
  if (name == "correlation") return Pipeline::kCorrelation;
  if (name == "qntk") return Pipeline::kQntk;
  if (name == "all") return Pipeline::kAll;
  throw ValidationError("unknown pipeline '" + std::string(name) + "' (expected variance|correlation|qntk|all)");
}

std::string pipeline_name(Pipeline pipeline) {
  switch (pipeline) {
    case Pipeline::kVariance: return "variance";
    case Pipeline::kCorrelation: return "correlation";
    case Pipeline::kQntk: return "qntk";
    case Pipeline::kAll: return "all";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Config

ExperimentConfig ExperimentConfig::desk_preset() {
  ExperimentConfig c;
  c.qubits = 4;
  c.samples = 20000;
  c.depths = {1, 2, 3};
  return c;
}

namespace {

PauliLetter parse_encoder(std::string_view s) {
  if (s == "x" || s == "X") return PauliLetter::X;
  if (s == "y" || s == "Y") return PauliLetter::Y;
  throw ValidationError("unknown encoder axis '" + std::string(s) + "' (expected x|y)");
}

template <class T>
T get_field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

void ExperimentConfig::apply_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const std::vector<std::string> known = {"pipeline", "family", "encoder", "qubits",         "layers",
                                                 "depths",   "samples", "nx",     "hamming",        "kcap",
                                                 "seed",     "mask_threshold",   "threads", "out"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
  try {
    if (j.contains("pipeline")) pipeline = parse_pipeline(get_field<std::string>(j, "pipeline"));
    if (j.contains("family")) family = parse_family(get_field<std::string>(j, "family"));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (j.contains("encoder")) encoder = parse_encoder(get_field<std::string>(j, "encoder"));
  if (j.contains("qubits")) qubits = get_field<std::size_t>(j, "qubits");
  if (j.contains("layers")) layers = get_field<std::size_t>(j, "layers");
  if (j.contains("depths")) depths = get_field<std::vector<std::size_t>>(j, "depths");
  if (j.contains("samples")) samples = get_field<std::uint64_t>(j, "samples");
  if (j.contains("nx")) nx = j.at("nx").is_null() ? std::nullopt : std::optional(get_field<std::size_t>(j, "nx"));
  if (j.contains("hamming")) {
    hamming = j.at("hamming").is_null() ? std::nullopt : std::optional(get_field<std::size_t>(j, "hamming"));
  }
  if (j.contains("kcap")) kcap = get_field<std::size_t>(j, "kcap");
  if (j.contains("seed")) seed = j.at("seed").is_null() ? std::nullopt : std::optional(get_field<std::uint64_t>(j, "seed"));
  if (j.contains("mask_threshold")) mask_threshold = get_field<double>(j, "mask_threshold");
  if (j.contains("threads")) threads = get_field<std::size_t>(j, "threads");
  if (j.contains("out")) out_dir = get_field<std::string>(j, "out");
}

Json ExperimentConfig::to_json() const {
  // Thread count and output directory do not affect results and are left
  // out so that reports compare byte for byte.
  Json j;
  j["pipeline"] = pipeline_name(pipeline);
  j["family"] = family_name(family);
  j["encoder"] = encoder == PauliLetter::X ? "x" : "y";
  j["qubits"] = qubits;
  j["layers"] = layers;
  j["depths"] = depths;
  j["samples"] = samples;
  j["nx"] = nx ? Json(*nx) : Json(nullptr);
  j["hamming"] = hamming ? Json(*hamming) : Json(nullptr);
  j["kcap"] = kcap;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["mask_threshold"] = mask_threshold;
  return j;
}

std::vector<std::string> ExperimentConfig::problems() const {
  std::vector<std::string> out;
  const bool entangling = family != Family::kYzyNoEnt;
  if (qubits < 1 || qubits > 24) out.push_back("qubits must be in 1..24");
  if (entangling && qubits < 2) out.push_back("family " + family_name(family) + " needs at least 2 qubits");
  if (layers < 1) out.push_back("layers must be >= 1");
  if (depths.empty()) out.push_back("depths must not be empty");
  for (std::size_t d : depths) {
    if (d < 1) out.push_back("depths must be >= 1");
  }
  if (samples < 4) out.push_back("samples must be >= 4");
  if (samples % 2 != 0) out.push_back("samples must be even (split-sample protocol)");
  const std::size_t omega_max = qubits * layers;
  for (Pipeline p : {Pipeline::kVariance, Pipeline::kCorrelation}) {
    const std::size_t n = nx_for(p);
    if (n <= 2 * omega_max) {
      out.push_back("nx=" + std::to_string(n) + " must exceed 2*n*L=" + std::to_string(2 * omega_max));
      break;
    }
  }
  if (kcap < 1) out.push_back("kcap must be >= 1");
  if (!seed) out.push_back("seed is required");
  if (!(mask_threshold >= 0.0 && mask_threshold < 1.0)) out.push_back("mask_threshold must be in [0, 1)");
  if (threads < 1) out.push_back("threads must be >= 1");
  return out;
}

void ExperimentConfig::validate() const {
  const auto p = problems();
  if (p.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& s : p) msg += "\n  - " + s;
  throw ValidationError(msg);
}

std::size_t ExperimentConfig::nx_for(Pipeline p) const {
  if (nx) return *nx;
  return p == Pipeline::kVariance ? 128 : 126;
}

std::size_t ExperimentConfig::hamming_for(std::size_t depth, std::size_t m) const {
  if (hamming) return std::min(*hamming, m);
  return depth > 1 ? std::min<std::size_t>(3, m) : m;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
  ExperimentConfig c;
  c.apply_json(j);
  return c;
}

// ---------------------------------------------------------------------------
// Artifacts

void Artifacts::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << content;
  }
}

Json Artifacts::report(const std::string& name) const {
  const auto it = files.find(name);
  if (it == files.end()) throw std::out_of_range("no artifact named " + name);
  return Json::parse(it->second);
}

// ---------------------------------------------------------------------------
// Pipelines

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string vector_csv_row(std::initializer_list<double> values) {
  std::string s;
  bool first = true;
  for (double v : values) {
    if (!first) s += ',';
    s += fmt(v);
    first = false;
  }
  return s;
}

Json to_json_vec(const VectorR& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<int> masked_omegas(const std::vector<int>& omegas, const std::vector<bool>& mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (mask[i]) out.push_back(omegas[i]);
  }
  return out;
}

std::vector<bool> common_unmasked(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> keep(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) keep[i] = !a[i] && !b[i];
  return keep;
}

struct Comparison {
  double eps_f = 0.0;
  double cosine = 0.0;
  std::size_t rows = 0;

  Json to_json() const { return Json{{"eps_f", eps_f}, {"cosine", cosine}, {"rows", rows}}; }
};

/// Metrics after restricting to the common unmasked block and scaling both
/// sides to unit Frobenius norm.
Comparison compare(const MatrixC& a, const MatrixC& b, const std::vector<bool>& keep) {
  const MatrixC ra = normalise_frobenius(restrict_to(a, keep));
  const MatrixC rb = normalise_frobenius(restrict_to(b, keep));
  Comparison c;
  c.rows = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
  if (c.rows == 0) throw InvariantError("comparison has no common unmasked rows");
  c.eps_f = frobenius_error(ra, rb);
  c.cosine = cosine_similarity(ra, rb);
  return c;
}

/// Variance normalisation D^{-1/2} H D^{-1/2} with D = diag(H).
CorrelationMatrix variance_normalise(const MatrixC& h, double threshold) { return correlation(h, threshold); }

/// Per-depth state shared by the pipelines of one run.
class DepthRun {
 public:
  DepthRun(const ExperimentConfig& config, std::size_t depth, const ProgressFn& progress)
      : config_(config),
        depth_(depth),
        progress_(progress),
        circuit_(build_family(config.family, config.encoder, config.qubits, config.layers, depth)),
        omegas_(frequency_set(circuit_).omegas),
        ensemble_{*config.seed, config.samples},
        K_(enumerate_K(circuit_.num_params(), config.hamming_for(depth, circuit_.num_params()), config.kcap)) {
    if (ensemble_.c_split().overlaps(ensemble_.mc_split())) {
      throw InvariantError("C split and reference split overlap");
    }
  }

  const Circuit& circuit() const { return circuit_; }
  const std::vector<int>& omegas() const { return omegas_; }
  const TruncatedK& K() const { return K_; }
  const SampleEnsemble& ensemble() const { return ensemble_; }
  std::size_t depth() const { return depth_; }

  const MatrixC& samples(bool c_split, std::size_t nx) {
    auto key = std::make_pair(c_split, nx);
    auto it = samples_.find(key);
    if (it == samples_.end()) {
      log("d=" + std::to_string(depth_) + ": coefficient samples (" + (c_split ? "C" : "MC") +
          " split, n_x=" + std::to_string(nx) + ")");
      const SampleRange r = c_split ? ensemble_.c_split() : ensemble_.mc_split();
      it = samples_.emplace(key, coefficient_samples(circuit_, ensemble_, r, nx, config_.threads)).first;
    }
    return it->second;
  }

  const CMatrix& c_hat(std::size_t nx) {
    auto it = chat_.find(nx);
    if (it == chat_.end()) {
      const MatrixC& a = samples(true, nx);
      log("d=" + std::to_string(depth_) + ": C estimate (|K|=" + std::to_string(K_.size()) + ")");
      it = chat_
               .emplace(nx, estimate_C_from_samples(a, omegas_, circuit_.num_params(), ensemble_,
                                                    ensemble_.c_split(), K_, nx, config_.threads))
               .first;
    }
    return it->second;
  }

  Json header(std::size_t nx) const {
    return Json{{"depth", depth_},
                {"m", circuit_.num_params()},
                {"n_x", nx},
                {"omegas", omegas_},
                {"K",
                 Json{{"h", K_.hamming},
                      {"cap", K_.cap},
                      {"size", K_.size()},
                      {"complete_weight", K_.complete_weight},
                      {"capped", K_.capped},
                      {"uncapped_size", count_K(K_.m, K_.hamming)}}},
                {"splits", Json{{"c", ensemble_.c_split().to_json()}, {"mc", ensemble_.mc_split().to_json()}}}};
  }

  Json provenance(const std::string& estimator, std::size_t nx, SampleRange range) const {
    Json p{{"estimator", estimator},
           {"config", config_.to_json()},
           {"depth", depth_},
           {"n_x", nx},
           {"seed", ensemble_.seed},
           {"S", ensemble_.count},
           {"split", range.to_json()}};
    if (estimator.ends_with("_c")) p["K"] = Json{{"h", K_.hamming}, {"cap", K_.cap}, {"size", K_.size()}};
    return p;
  }

  void log(const std::string& msg) const {
    if (progress_) progress_(msg);
  }

 private:
  const ExperimentConfig& config_;
  std::size_t depth_;
  const ProgressFn& progress_;
  Circuit circuit_;
  std::vector<int> omegas_;
  SampleEnsemble ensemble_;
  TruncatedK K_;
  std::map<std::pair<bool, std::size_t>, MatrixC> samples_;
  std::map<std::size_t, CMatrix> chat_;
};

std::string suffix(std::size_t depth) { return "_d" + std::to_string(depth); }

void emit_matrix(Artifacts& out, const std::string& stem, const std::string& kind, const std::vector<int>& omegas,
                 const MatrixC& values, const std::vector<bool>& mask, Json provenance) {
  LabeledMatrix lm;
  lm.kind = kind;
  lm.row_omegas = omegas;
  lm.col_labels = omegas;
  lm.values = values;
  lm.mask = mask;
  lm.provenance = std::move(provenance);
  out.files[stem + ".json"] = write_matrix_json(lm);
  out.files[stem + ".csv"] = heatmap_csv(lm);
}

Json report_head(const ExperimentConfig& config, Pipeline p) {
  return Json{{"schema", "chm-report"},
              {"version", kReportSchemaVersion},
              {"pipeline", pipeline_name(p)},
              {"config", config.to_json()},
              {"n_x", config.nx_for(p)},
              {"depths", Json::array()}};
}

// --- variance --------------------------------------------------------------

Json variance_depth(const ExperimentConfig& config, DepthRun& run, Artifacts& out) {
  const std::size_t nx = config.nx_for(Pipeline::kVariance);
  const CMatrix& c = run.c_hat(nx);
  const VectorR var_mc = mc_variance(run.samples(false, nx));
  const VectorR energy_c = variance_profile(c);
  const VectorR energy_full = row_energy(c);
  const double vmax = var_mc.maxCoeff();
  const double emax = energy_c.maxCoeff();
  const VectorR var_norm = vmax > 0.0 ? VectorR(var_mc / vmax) : var_mc;
  const VectorR energy_norm = emax > 0.0 ? VectorR(energy_c / emax) : energy_c;

  const auto& omegas = run.omegas();
  std::string csv = "omega,var_mc,row_energy_c,var_mc_norm,row_energy_c_norm,row_energy_c_full\n";
  Json support_mc = Json::array();
  Json support_c = Json::array();
  double odd_max = 0.0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    csv += std::to_string(omegas[i]) + ',' +
           vector_csv_row({var_mc(r), energy_c(r), var_norm(r), energy_norm(r), energy_full(r)}) + '\n';
    if (var_norm(r) >= config.mask_threshold && var_mc(r) > 0.0) support_mc.push_back(omegas[i]);
    if (energy_norm(r) >= config.mask_threshold && energy_c(r) > 0.0) support_c.push_back(omegas[i]);
    if (omegas[i] % 2 != 0) odd_max = std::max(odd_max, var_norm(r));
  }
  const std::string stem = "variance" + suffix(run.depth());
  out.files[stem + ".csv"] = csv;

  double r = std::numeric_limits<double>::quiet_NaN();
  if (vmax > 0.0 && emax > 0.0) r = pearson(var_norm, energy_norm);
  Json d = run.header(nx);
  d["pearson"] = std::isnan(r) ? Json(nullptr) : Json(r);
  d["var_mc"] = to_json_vec(var_mc);
  d["row_energy_c"] = to_json_vec(energy_c);
  d["row_energy_c_full"] = to_json_vec(energy_full);
  d["var_mc_norm"] = to_json_vec(var_norm);
  d["row_energy_c_norm"] = to_json_vec(energy_norm);
  d["support_mc"] = support_mc;
  d["support_c"] = support_c;
  d["odd_max_rel_var_mc"] = odd_max;
  d["files"] = Json{{"csv", stem + ".csv"}};
  return d;
}

// --- correlation -----------------------------------------------------------

struct CorrPair {
  CorrelationMatrix c;
  CorrelationMatrix mc;
  Comparison cmp;
};

CorrPair correlation_pair(const ExperimentConfig& config, DepthRun& run) {
  const std::size_t nx = config.nx_for(Pipeline::kCorrelation);
  CorrPair p{correlation(covariance_from_C(run.c_hat(nx)), config.mask_threshold),
             correlation(mc_covariance(run.samples(false, nx)), config.mask_threshold),
             {}};
  p.cmp = compare(p.c.values, p.mc.values, common_unmasked(p.c.mask, p.mc.mask));
  return p;
}

Json correlation_depth(const ExperimentConfig& config, DepthRun& run, const CorrPair& p, Artifacts& out) {
  const std::size_t nx = config.nx_for(Pipeline::kCorrelation);
  const auto& omegas = run.omegas();
  const std::string sc = "corr_c" + suffix(run.depth());
  const std::string smc = "corr_mc" + suffix(run.depth());
  emit_matrix(out, sc, "correlation", omegas, p.c.values, p.c.mask,
              run.provenance("corr_c", nx, run.ensemble().c_split()));
  emit_matrix(out, smc, "correlation", omegas, p.mc.values, p.mc.mask,
              run.provenance("corr_mc", nx, run.ensemble().mc_split()));
  Json d = run.header(nx);
  d["eps_f"] = p.cmp.eps_f;
  d["cosine"] = p.cmp.cosine;
  d["compared_rows"] = p.cmp.rows;
  d["mean_offdiag_c"] = mean_offdiag(p.c);
  d["mean_offdiag_mc"] = mean_offdiag(p.mc);
  d["mean_offdiag_c_all"] = mean_offdiag_all(p.c.values);
  d["mean_offdiag_mc_all"] = mean_offdiag_all(p.mc.values);
  d["masked_c"] = masked_omegas(omegas, p.c.mask);
  d["masked_mc"] = masked_omegas(omegas, p.mc.mask);
  d["files"] = Json{{"corr_c", sc + ".json"}, {"corr_mc", smc + ".json"}};
  return d;
}

// --- qntk ------------------------------------------------------------------

Json qntk_depth(const ExperimentConfig& config, DepthRun& run, const CorrPair& corr, Artifacts& out) {
  const std::size_t nx = config.nx_for(Pipeline::kQntk);
  const CMatrix& c = run.c_hat(nx);
  const MatrixC h_c = H_averaged(c);
  run.log("d=" + std::to_string(run.depth()) + ": Monte-Carlo Jacobian Gram");
  const MatrixC h_mc = mc_jacobian_gram(run.circuit(), run.ensemble(), run.ensemble().mc_split(), nx, config.threads);
  const CorrelationMatrix n_c = variance_normalise(h_c, config.mask_threshold);
  const CorrelationMatrix n_mc = variance_normalise(h_mc, config.mask_threshold);
  const Comparison cmp = compare(n_c.values, n_mc.values, common_unmasked(n_c.mask, n_mc.mask));
  const std::vector<bool> all(run.omegas().size(), true);
  const Comparison raw = compare(h_c, h_mc, all);
  const Comparison vs_corr_c = compare(n_c.values, corr.c.values, common_unmasked(n_c.mask, corr.c.mask));
  const Comparison vs_corr_mc = compare(n_mc.values, corr.mc.values, common_unmasked(n_mc.mask, corr.mc.mask));

  const auto& omegas = run.omegas();
  const std::string sc = "qntk_c" + suffix(run.depth());
  const std::string smc = "qntk_mc" + suffix(run.depth());
  emit_matrix(out, sc, "qntk_averaged", omegas, h_c, {}, run.provenance("qntk_c", nx, run.ensemble().c_split()));
  emit_matrix(out, smc, "qntk_averaged", omegas, h_mc, {}, run.provenance("qntk_mc", nx, run.ensemble().mc_split()));
  emit_matrix(out, sc + "_norm", "qntk_variance_normalised", omegas, n_c.values, n_c.mask,
              run.provenance("qntk_c", nx, run.ensemble().c_split()));
  emit_matrix(out, smc + "_norm", "qntk_variance_normalised", omegas, n_mc.values, n_mc.mask,
              run.provenance("qntk_mc", nx, run.ensemble().mc_split()));

  Json d = run.header(nx);
  d["eps_f"] = cmp.eps_f;
  d["cosine"] = cmp.cosine;
  d["compared_rows"] = cmp.rows;
  d["raw"] = raw.to_json();
  d["corr_eps_f"] = corr.cmp.eps_f;
  d["eps_f_ratio"] = corr.cmp.eps_f > 0.0 ? Json(cmp.eps_f / corr.cmp.eps_f) : Json(nullptr);
  d["vs_corr_c"] = vs_corr_c.to_json();
  d["vs_corr_mc"] = vs_corr_mc.to_json();
  d["masked_c"] = masked_omegas(omegas, n_c.mask);
  d["masked_mc"] = masked_omegas(omegas, n_mc.mask);
  d["files"] = Json{{"qntk_c", sc + ".json"},
                    {"qntk_mc", smc + ".json"},
                    {"qntk_c_norm", sc + "_norm.json"},
                    {"qntk_mc_norm", smc + "_norm.json"}};
  return d;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

Artifacts run_pipeline(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  const bool want_var = config.pipeline == Pipeline::kVariance || config.pipeline == Pipeline::kAll;
  const bool want_corr = config.pipeline == Pipeline::kCorrelation || config.pipeline == Pipeline::kAll;
  const bool want_qntk = config.pipeline == Pipeline::kQntk || config.pipeline == Pipeline::kAll;

  Artifacts out;
  Json var_report = report_head(config, Pipeline::kVariance);
  Json corr_report = report_head(config, Pipeline::kCorrelation);
  Json qntk_report = report_head(config, Pipeline::kQntk);
  std::string offdiag_csv = "depth,mean_offdiag_c,mean_offdiag_mc,mean_offdiag_c_all,mean_offdiag_mc_all,eps_f,cosine\n";
  std::optional<CorrelationMatrix> prev_corr;
  Json consecutive = Json::array();

  for (std::size_t depth : config.depths) {
    DepthRun run(config, depth, progress);
    if (want_var) var_report["depths"].push_back(variance_depth(config, run, out));
    if (want_corr || want_qntk) {
      const CorrPair corr = correlation_pair(config, run);
      if (want_corr) {
        Json d = correlation_depth(config, run, corr, out);
        offdiag_csv += std::to_string(depth) + ',' +
                       vector_csv_row({d["mean_offdiag_c"].get<double>(), d["mean_offdiag_mc"].get<double>(),
                                       d["mean_offdiag_c_all"].get<double>(), d["mean_offdiag_mc_all"].get<double>(),
                                       corr.cmp.eps_f, corr.cmp.cosine}) +
                       '\n';
        if (prev_corr) {
          const Comparison step = compare(prev_corr->values, corr.mc.values, common_unmasked(prev_corr->mask, corr.mc.mask));
          consecutive.push_back(Json{{"depth", depth}, {"eps_f", step.eps_f}, {"cosine", step.cosine}});
        }
        prev_corr = corr.mc;
        corr_report["depths"].push_back(std::move(d));
      }
      if (want_qntk) qntk_report["depths"].push_back(qntk_depth(config, run, corr, out));
    }
  }

  Json manifest{{"schema", "chm-manifest"},
                {"version", kReportSchemaVersion},
                {"pipeline", pipeline_name(config.pipeline)},
                {"config", config.to_json()},
                {"reports", Json::array()}};
  if (want_var) {
    out.files["report_variance.json"] = dump_report(var_report);
    manifest["reports"].push_back("report_variance.json");
  }
  if (want_corr) {
    corr_report["consecutive_mc"] = consecutive;
    out.files["report_correlation.json"] = dump_report(corr_report);
    out.files["offdiag.csv"] = offdiag_csv;
    manifest["reports"].push_back("report_correlation.json");
  }
  if (want_qntk) {
    out.files["report_qntk.json"] = dump_report(qntk_report);
    manifest["reports"].push_back("report_qntk.json");
  }
  Json files = Json::array();
  for (const auto& [name, content] : out.files) files.push_back(name);
  manifest["files"] = files;
  out.files["manifest.json"] = dump_report(manifest);
  if (!config.out_dir.empty()) out.write(config.out_dir);
  return out;
}

}  // namespace chm
