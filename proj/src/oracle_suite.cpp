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

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chm/errors.hpp"
#include "chm/estimation.hpp"
#include "chm/experiments.hpp"
#include "chm/pauli_prop.hpp"
#include "chm/simulator.hpp"
#include "chm/spectral.hpp"
#include "chm/stats.hpp"

namespace chm {

Circuit analytic_circuit() {
  Layer layer;
  layer.encoder.push_back(EncoderGate{PauliLetter::X, 0});
  layer.trainable.push_back(RotationGate{PauliString::parse("Y"), 0, {}});
  return Circuit(1, 1, {layer}, {ObservableTerm{1.0, PauliString::parse("Z")}});
}

Circuit random_two_qubit_circuit(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  static const char* kSingle[] = {"X", "Y", "Z"};
  static const char* kDouble[] = {"ZZ", "XY", "YX", "XX"};
  const PauliLetter enc = pick(2) == 0 ? PauliLetter::X : PauliLetter::Y;
  const std::size_t num_layers = 1 + pick(2);
  std::vector<Layer> layers(num_layers);
  std::size_t m = 0;
  for (std::size_t l = 0; l < num_layers; ++l) {
    layers[l].encoder = {EncoderGate{enc, 0}, EncoderGate{enc, 1}};
    const std::size_t ops = 3 + pick(3);
    bool has_cnot = false;
    for (std::size_t o = 0; o < ops; ++o) {
      const std::size_t kind = pick(6);
      if (kind == 0 || (o + 1 == ops && !has_cnot)) {
        const std::size_t c = pick(2);
        layers[l].trainable.push_back(CliffordGate{CliffordKind::kCnot, c, 1 - c});
        has_cnot = true;
      } else if (kind == 1) {
        layers[l].trainable.push_back(RotationGate{PauliString::parse(kDouble[pick(4)]), m++, {pick(2) ? 1 : -1, 1}});
      } else {
        PauliString axis(2);
        axis.set_letter(pick(2), letter_from_char(kSingle[pick(3)][0]));
        layers[l].trainable.push_back(RotationGate{axis, m++, {pick(2) ? 1 : -1, 1}});
      }
    }
  }
  std::vector<ObservableTerm> obs;
  static const char* kObs[] = {"ZI", "IZ", "ZZ", "XI", "XZ"};
  for (const char* p : kObs) {
    const double w = std::round(uniform_angle(seed, 7, obs.size()) * 100.0) / 100.0 - 3.0;
    if (pick(3) != 0 || obs.empty()) obs.push_back(ObservableTerm{w, PauliString::parse(p)});
  }
  return Circuit(2, m, std::move(layers), std::move(obs));
}

bool OracleReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

Json OracleReport::to_json() const {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back(Json{{"name", c.name},
                       {"passed", c.passed},
                       {"value", c.value},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
  }
  return Json{{"passed", passed()}, {"checks", arr}};
}

namespace {

class Suite {
 public:
  explicit Suite(OracleReport& report) : report_(report) {}

  /// value <= tol passes.
  void at_most(const std::string& name, double value, double tol, std::string detail = {}) {
    report_.checks.push_back({name, value <= tol, value, tol, std::move(detail)});
  }
  /// value >= tol passes.
  void at_least(const std::string& name, double value, double tol, std::string detail = {}) {
    report_.checks.push_back({name, value >= tol, value, tol, std::move(detail)});
  }
  void fail(const std::string& name, const std::string& detail) {
    report_.checks.push_back({name, false, std::nan(""), 0.0, detail});
  }

 private:
  OracleReport& report_;
};

std::vector<double> draw(std::uint64_t seed, std::uint64_t s, std::size_t m) {
  std::vector<double> v(m);
  for (std::size_t a = 0; a < m; ++a) v[a] = uniform_angle(seed, s, a);
  return v;
}

double max_abs(const MatrixC& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

void exact_checks(Suite& suite, const std::string& label, const Circuit& circuit, const CMatrix& c,
                  const std::vector<PropNode>& nodes, const OracleOptions& opt) {
  // Reconstruction at 100 random points.
  double worst = 0.0;
  for (std::uint64_t p = 0; p < 100; ++p) {
    const std::vector<double> theta = draw(opt.seed ^ 0xA11CE, p, circuit.num_params());
    const double x = uniform_angle(opt.seed ^ 0xB0B, p, 0);
    const std::complex<double> v = c.evaluate(x, theta);
    worst = std::max(worst, std::abs(v - std::complex<double>(expectation(circuit, x, theta), 0.0)));
  }
  suite.at_most(label + "/reconstruction", worst, 1e-10, "max |f_C - f_sim| over 100 points");

  try {
    const SupportBound b = support_bound(nodes);
    std::ostringstream os;
    os << "b_max=" << b.b_max << " S_gen=" << b.s_gen;
    suite.at_least(label + "/support_bound", static_cast<double>(b.s_gen), static_cast<double>(b.lower_bound), os.str());
  } catch (const InvariantError& e) {
    suite.fail(label + "/support_bound", e.what());
  }

  const MatrixC cov = covariance_from_C(c);
  suite.at_most(label + "/covariance_hermitian", hermitian_defect(cov), 1e-12);
  suite.at_least(label + "/covariance_psd", is_psd(cov) ? 1.0 : 0.0, 1.0);

  // Pointwise kernel identity on an 8-point grid at 20 parameter draws.
  const FrequencySet omega = frequency_set(circuit);
  std::vector<double> xs(8);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / 8.0 + 0.1;
  const MatrixC v = design_matrix(omega.omegas, xs);
  double worst_k = 0.0;
  double worst_trace = 0.0;
  const DftPlan plan(omega.omegas, 2 * static_cast<std::size_t>(omega.max_frequency()) + 2);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const std::vector<double> theta = draw(opt.seed ^ 0xC0FFEE, t, circuit.num_params());
    const MatrixC k = data_qntk(v, H_kernel(c, theta));
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(circuit.num_params()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::vector<double> g = jacobian(circuit, xs[i], theta);
      for (std::size_t a = 0; a < g.size(); ++a) jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = g[a];
    }
    const MatrixC direct = (jac * jac.transpose()).cast<std::complex<double>>();
    worst_k = std::max(worst_k, max_abs(k - direct));
    const MatrixC x_sim = coefficient_jacobian(circuit, theta, plan);
    worst_trace = std::max(worst_trace, std::abs(H_kernel(c, theta).trace().real() - x_sim.squaredNorm()));
  }
  suite.at_most(label + "/data_qntk_pointwise", worst_k, 1e-8, "max |V H V^dag - J J^T| over 20 theta");
  suite.at_most(label + "/H_trace_gram", worst_trace, 1e-8, "|tr H(theta) - sum_a ||d_a a||^2|");

  // Shift rule against the adjoint Jacobian.
  double worst_g = 0.0;
  const std::vector<double> theta = draw(opt.seed ^ 0xD00D, 0, circuit.num_params());
  const std::vector<double> jac = jacobian(circuit, 0.7, theta);
  for (std::size_t a = 0; a < circuit.num_params(); ++a) {
    worst_g = std::max(worst_g, std::abs(gradient(circuit, 0.7, theta, a) - jac[a]));
  }
  suite.at_most(label + "/shift_rule_vs_adjoint", worst_g, 1e-10);
}

void mc_checks(Suite& suite, const std::string& label, const Circuit& circuit, const CMatrix& exact,
               const OracleOptions& opt) {
  const SampleEnsemble ens{opt.seed, opt.samples};
  const std::size_t nx = 2 * static_cast<std::size_t>(frequency_set(circuit).max_frequency()) + 4;
  const MatrixC a_mc = coefficient_samples(circuit, ens, ens.mc_split(), nx, opt.threads);
  const double s_mc = static_cast<double>(ens.mc_split().size());

  const MatrixC second = mc_second_moment(a_mc);
  const VectorC mean = mc_mean(a_mc);
  const MatrixC cov = mc_covariance(a_mc);
  suite.at_most(label + "/second_moment_decomposition", max_abs(second - cov - mean * mean.adjoint()), 1e-10);

  const VectorR parseval = second.diagonal().real();
  const VectorR energy = row_energy(exact);
  suite.at_most(label + "/parseval", (parseval - energy).cwiseAbs().maxCoeff(), 4.0 / std::sqrt(s_mc),
                "max |E|a|^2 - row energy|");

  const CorrelationMatrix ce = correlation(covariance_from_C(exact));
  const CorrelationMatrix cm = correlation(cov);
  std::vector<bool> keep(ce.mask.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = !ce.mask[i] && !cm.mask[i];
  suite.at_most(label + "/correlation_exact_vs_mc",
                frobenius_error(restrict_to(cm.values, keep), restrict_to(ce.values, keep)), 5.0 / std::sqrt(s_mc));

  const MatrixC h_mc = mc_jacobian_gram(circuit, ens, ens.mc_split(), nx, opt.threads);
  const MatrixC h_exact = H_averaged(exact);
  suite.at_least(label + "/qntk_averaged_cosine", cosine_similarity(h_mc, h_exact), 0.99);
  suite.at_most(label + "/qntk_averaged_eps_f", frobenius_error(h_mc, h_exact), 0.05);
}

}  // namespace

OracleReport run_analytic_suite(const OracleOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  OracleReport report;
  Suite suite(report);
  PropagationOptions popt;
  popt.sin_branch_sign = opt.sin_branch_sign;

  // 1-qubit analytic circuit: C_{+-1, +-1} = 1/4.
  {
    const Circuit circuit = analytic_circuit();
    const PropagationResult prop = backpropagate(circuit, popt);
    const CMatrix c = exact_C_from_nodes(circuit, prop.nodes);
    const HarmonicIndex kp({{0, 1}});
    const HarmonicIndex km({{0, -1}});
    double dev = 0.0;
    for (int w : {-1, 0, 1}) {
      for (const HarmonicIndex& k : {HarmonicIndex{}, kp, km}) {
        const double expect = (w != 0 && !k.is_zero()) ? 0.25 : 0.0;
        dev = std::max(dev, std::abs(c.at(w, k) - expect));
      }
    }
    suite.at_most("analytic/closed_form_C", dev, 1e-15);
    exact_checks(suite, "analytic", circuit, c, prop.nodes, opt);

    const VectorR var = variance_profile(c);
    const double var_dev = std::max({std::abs(var(0) - 0.125), std::abs(var(1)), std::abs(var(2) - 0.125)});
    suite.at_most("analytic/variance_profile", var_dev, 0.0, "[1/8, 0, 1/8] exactly");
    const MatrixC h = H_averaged(c);
    const double h_dev = std::max({std::abs(h(0, 0) - 0.125), std::abs(h(0, 2) - 0.125), std::abs(h(2, 0) - 0.125),
                                   std::abs(h(2, 2) - 0.125), std::abs(h(1, 1)), std::abs(h(0, 1))});
    suite.at_most("analytic/H_averaged_block", h_dev, 1e-15, "1/8 on omega = +-1");
    const CorrelationMatrix corr = correlation(covariance_from_C(c));
    suite.at_most("analytic/correlation", std::abs(corr.values(0, 2) - 1.0), 1e-12, "corr(+1, -1) = 1");

    const std::vector<double> zero{0.0};
    const VectorC a = dft_coefficients(circuit, zero, 8);
    suite.at_most("analytic/dft", std::max({std::abs(a(0) - 0.5), std::abs(a(1)), std::abs(a(2) - 0.5)}), 1e-12);

    if (!opt.exact_only) {
      mc_checks(suite, "analytic", circuit, c, opt);
      const SampleEnsemble ens{opt.seed, opt.samples};
      const CMatrix chat = estimate_C(circuit, ens, ens.c_split(), enumerate_K(1, 1), 8, opt.threads);
      const double s_c = static_cast<double>(ens.c_split().size());
      suite.at_most("analytic/estimate_C", std::abs(chat.at(1, kp) - 0.25), 3.0 / std::sqrt(s_c));
      const VectorR v_mc = mc_variance(coefficient_samples(circuit, ens, ens.mc_split(), 8, opt.threads));
      suite.at_least("analytic/variance_pearson", pearson(v_mc, variance_profile(chat)), 1.0 - 1e-3);
    }
  }

  for (std::uint64_t r = 0; r < 5; ++r) {
    const Circuit circuit = random_two_qubit_circuit(opt.seed + 17 * r + 1);
    const std::string label = "random2q_" + std::to_string(r);
    const PropagationResult prop = backpropagate(circuit, popt);
    const CMatrix c = exact_C_from_nodes(circuit, prop.nodes);
    exact_checks(suite, label, circuit, c, prop.nodes, opt);
    if (!opt.exact_only) mc_checks(suite, label, circuit, c, opt);
  }

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace chm
