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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>

#include "chm/circuit.hpp"
#include "chm/errors.hpp"
#include "chm/estimation.hpp"
#include "chm/experiments.hpp"
#include "chm/pauli_prop.hpp"
#include "chm/simulator.hpp"
#include "chm/spectral.hpp"
#include "chm/stats.hpp"

namespace py = pybind11;
using namespace chm;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::handle& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

PauliLetter axis(const std::string& s) {
  if (s.size() != 1) throw std::invalid_argument("axis must be one of x, y, z");
  return letter_from_char(static_cast<char>(std::toupper(static_cast<unsigned char>(s[0]))));
}

SampleRange split_of(const SampleEnsemble& e, const std::string& split) {
  if (split == "c") return e.c_split();
  if (split == "mc") return e.mc_split();
  if (split == "all") return e.all();
  throw std::invalid_argument("split must be 'c', 'mc' or 'all'");
}

std::vector<std::string> labels(const std::vector<HarmonicIndex>& ks) {
  std::vector<std::string> out;
  out.reserve(ks.size());
  for (const auto& k : ks) out.push_back(k.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_chm, m) {
  m.doc() = "Circuit harmonic matrix: exact and Monte-Carlo construction, statistics and kernels.";

  static py::exception<InvariantError> invariant_error(m, "InvariantError", PyExc_RuntimeError);
  static py::exception<BudgetExceeded> budget_exceeded(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvariantError& e) {
      py::set_error(invariant_error, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_exceeded, e.what());
    }
  });

  // --- circuits -------------------------------------------------------------
  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("num_qubits", &Circuit::num_qubits)
      .def_property_readonly("num_params", &Circuit::num_params)
      .def_property_readonly("num_layers", &Circuit::num_layers)
      .def_property_readonly("two_qubit_gates", &Circuit::count_two_qubit_gates)
      .def("to_json", [](const Circuit& c) { return circuit_to_json(c); })
      .def_static("from_json", [](const std::string& s) { return circuit_from_json(s); })
      .def("expectation", [](const Circuit& c, double x, const std::vector<double>& theta) {
        return expectation(c, x, theta);
      })
      .def("jacobian", [](const Circuit& c, double x, const std::vector<double>& theta) {
        return jacobian(c, x, theta);
      })
      .def("validate", [](const Circuit& c) {
        std::vector<std::string> out;
        for (const auto& issue : validate(c).issues) out.push_back(issue.message);
        return out;
      })
      .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; });

  m.def(
      "build_family",
      [](const std::string& family, const std::string& encoder, std::size_t qubits, std::size_t layers,
         std::size_t depth) { return build_family(parse_family(family), axis(encoder), qubits, layers, depth); },
      py::arg("family"), py::arg("encoder") = "x", py::arg("qubits") = 4, py::arg("layers") = 1,
      py::arg("depth") = 1);
  m.def("analytic_circuit", &analytic_circuit);
  m.def("random_two_qubit_circuit", &random_two_qubit_circuit, py::arg("seed"));
  m.def("frequencies", [](const Circuit& c) { return frequency_set(c).omegas; });
  m.def("redundancy_profile", [](const Circuit& c) { return redundancy_profile(frequency_set(c).per_layer); });
  m.def(
      "enumerate_K", [](std::size_t m_, std::size_t h, std::size_t cap) { return labels(enumerate_K(m_, h, cap).indices); },
      py::arg("m"), py::arg("hamming"), py::arg("cap") = kDefaultKCap);
  m.def("count_K", &count_K, py::arg("m"), py::arg("hamming"));

  // --- C --------------------------------------------------------------------
  py::class_<CMatrix>(m, "CMatrix")
      .def_readonly("omegas", &CMatrix::omegas)
      .def_readonly("num_params", &CMatrix::num_params)
      .def_property_readonly("values", [](const CMatrix& c) { return c.values; })
      .def_property_readonly("ks", [](const CMatrix& c) { return labels(c.ks); })
      .def_property_readonly("shape", [](const CMatrix& c) { return py::make_tuple(c.rows(), c.cols()); })
      .def_property_readonly("provenance", [](const CMatrix& c) { return to_py(c.provenance); })
      .def("k_dense", [](const CMatrix& c) {
        std::vector<std::vector<int>> out;
        for (const auto& k : c.ks) out.push_back(k.to_dense(c.num_params));
        return out;
      })
      .def("evaluate", [](const CMatrix& c, double x, const std::vector<double>& theta) { return c.evaluate(x, theta); })
      .def("to_json", [](const CMatrix& c) { return write_matrix_json(to_labeled(c)); })
      .def_static("from_json", [](const std::string& s) { return cmatrix_from_labeled(read_matrix_json(s)); });

  m.def(
      "exact_C",
      [](const Circuit& c, std::size_t node_budget) {
        PropagationOptions opts;
        opts.node_budget = node_budget;
        return exact_C(c, opts);
      },
      py::arg("circuit"), py::arg("node_budget") = PropagationOptions{}.node_budget);
  m.def(
      "estimate_C",
      [](const Circuit& c, std::uint64_t seed, std::uint64_t samples, std::size_t hamming, std::size_t cap,
         std::size_t nx, std::size_t threads, const std::string& split) {
        const SampleEnsemble e{seed, samples};
        py::gil_scoped_release release;
        return estimate_C(c, e, split_of(e, split), enumerate_K(c.num_params(), hamming, cap), nx, threads);
      },
      py::arg("circuit"), py::arg("seed"), py::arg("samples"), py::arg("hamming"), py::arg("cap") = kDefaultKCap,
      py::arg("nx") = 126, py::arg("threads") = 1, py::arg("split") = "c");

  // --- estimation -----------------------------------------------------------
  m.def("sample_theta", [](std::uint64_t seed, std::uint64_t s, std::size_t dim) {
    return sample_theta(SampleEnsemble{seed, s + 1}, s, dim);
  });
  m.def(
      "dft_coefficients",
      [](const Circuit& c, const std::vector<double>& theta, std::size_t nx) { return dft_coefficients(c, theta, nx); },
      py::arg("circuit"), py::arg("theta"), py::arg("nx"));
  m.def(
      "mc_variance",
      [](const Circuit& c, std::uint64_t seed, std::uint64_t samples, std::size_t nx, std::size_t threads,
         const std::string& split) {
        const SampleEnsemble e{seed, samples};
        py::gil_scoped_release release;
        return mc_variance(c, e, split_of(e, split), nx, threads);
      },
      py::arg("circuit"), py::arg("seed"), py::arg("samples"), py::arg("nx") = 128, py::arg("threads") = 1,
      py::arg("split") = "mc");
  m.def(
      "mc_covariance",
      [](const Circuit& c, std::uint64_t seed, std::uint64_t samples, std::size_t nx, std::size_t threads,
         const std::string& split) {
        const SampleEnsemble e{seed, samples};
        py::gil_scoped_release release;
        return mc_covariance(c, e, split_of(e, split), nx, threads);
      },
      py::arg("circuit"), py::arg("seed"), py::arg("samples"), py::arg("nx") = 126, py::arg("threads") = 1,
      py::arg("split") = "mc");
  m.def(
      "mc_jacobian_gram",
      [](const Circuit& c, std::uint64_t seed, std::uint64_t samples, std::size_t nx, std::size_t threads,
         const std::string& split) {
        const SampleEnsemble e{seed, samples};
        py::gil_scoped_release release;
        return mc_jacobian_gram(c, e, split_of(e, split), nx, threads);
      },
      py::arg("circuit"), py::arg("seed"), py::arg("samples"), py::arg("nx") = 126, py::arg("threads") = 1,
      py::arg("split") = "mc");

  // --- statistics and kernels -----------------------------------------------
  m.def("covariance_from_C", &covariance_from_C);
  m.def("variance_profile", &variance_profile);
  m.def("row_energy", &row_energy);
  m.def(
      "correlation",
      [](const MatrixC& cov, double threshold) {
        const CorrelationMatrix c = correlation(cov, threshold);
        py::dict out;
        out["values"] = c.values;
        out["mask"] = c.mask;
        out["variance"] = c.variance;
        out["mean_offdiag"] = mean_offdiag(c);
        return out;
      },
      py::arg("cov"), py::arg("mask_threshold") = kDefaultMaskThreshold);
  m.def("H_averaged", &H_averaged);
  m.def("H_kernel", [](const CMatrix& c, const std::vector<double>& theta) { return H_kernel(c, theta); });
  m.def("design_matrix", [](const std::vector<int>& omegas, const std::vector<double>& xs) {
    return design_matrix(omegas, xs);
  });
  m.def("data_qntk", &data_qntk);
  m.def("frobenius_error", &frobenius_error);
  m.def("cosine_similarity", &cosine_similarity);

  // --- pipelines ------------------------------------------------------------
  m.def(
      "run_pipeline",
      [](const py::dict& config, const std::string& out) {
        ExperimentConfig c;
        c.apply_json(from_py(config));
        c.out_dir = out;
        Artifacts a;
        {
          py::gil_scoped_release release;
          a = run_pipeline(c);
        }
        return a.files;
      },
      py::arg("config"), py::arg("out") = "");
  m.def(
      "run_oracle",
      [](bool exact_only, std::uint64_t seed, std::uint64_t samples) {
        OracleOptions o;
        o.exact_only = exact_only;
        o.seed = seed;
        o.samples = samples;
        OracleReport r;
        {
          py::gil_scoped_release release;
          r = run_analytic_suite(o);
        }
        return to_py(r.to_json());
      },
      py::arg("exact_only") = true, py::arg("seed") = OracleOptions{}.seed, py::arg("samples") = OracleOptions{}.samples);
}
