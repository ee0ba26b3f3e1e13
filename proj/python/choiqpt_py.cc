// Copyright 2026 The choiqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

#include <cmath>

#include "choiqpt/channels.h"
#include "choiqpt/cli.h"
#include "choiqpt/gates.h"
#include "choiqpt/metrics.h"
#include "choiqpt/noise.h"
#include "choiqpt/simulator.h"
#include "choiqpt/svg.h"
#include "choiqpt/tomography.h"

namespace py = pybind11;
using namespace choiqpt;

namespace {

// Square channels only: d^2 x d^2 Choi matrix.
ChoiMatrix as_choi(const ComplexMatrix& m) {
  require_square(m, "choi");
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (d * d != static_cast<std::size_t>(m.rows())) {
    throw DimensionError("choi: size " + std::to_string(m.rows()) + " is not a perfect square");
  }
  return ChoiMatrix(d, d, m);
}

std::size_t qubits_of(std::size_t dim) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < dim) ++k;
  if ((std::size_t{1} << k) != dim) throw DimensionError("dimension is not a power of two");
  return k;
}

py::dict counts_dict(const CountsTable& t) {
  py::dict d;
  for (const auto& [bits, n] : t.counts) d[py::str(bits)] = n;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-qubit process tomography on a density-matrix simulator";

  py::class_<Circuit>(m, "Circuit")
      .def(py::init<std::size_t>(), py::arg("num_qubits"))
      .def(
          "add",
          [](Circuit& c, const std::string& name, std::vector<std::size_t> qubits, std::vector<double> params)
              -> Circuit& { return c.add(name, std::move(qubits), std::move(params)); },
          py::arg("name"), py::arg("qubits"), py::arg("params") = std::vector<double>{},
          py::return_value_policy::reference_internal)
      .def_readonly("num_qubits", &Circuit::num_qubits)
      .def_property_readonly("gates",
                             [](const Circuit& c) {
                               py::list out;
                               for (const auto& g : c.gates) out.append(py::make_tuple(g.name, g.qubits, g.params));
                               return out;
                             })
      .def("count", [](const Circuit& c, const std::string& name) { return c.count(name); })
      .def("__len__", [](const Circuit& c) { return c.gates.size(); })
      .def("to_json", [](const Circuit& c) { return nlohmann::json(c).dump(); })
      .def_static("from_json", [](const std::string& s) { return nlohmann::json::parse(s).get<Circuit>(); })
      .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; });

  m.def("gate_names", [] {
    std::vector<std::string> out;
    for (const auto& g : gate_library()) out.emplace_back(g.name);
    return out;
  });
  m.def("gate_unitary", [](const std::string& name, const std::vector<double>& params) {
    return gate_unitary(name, params);
  }, py::arg("name"), py::arg("params") = std::vector<double>{});
  m.def("load_circuit", &load_circuit, py::arg("path"));
  m.def("circuit_unitary", &circuit_unitary, py::arg("circuit"));
  m.def("sqscz_decomposition", &sqscz_decomposition);
  m.def("cnot_from_sqscz", &cnot_from_sqscz);
  m.def("lower_to_native", &lower_to_native, py::arg("circuit"));
  m.def(
      "equal_up_to_global_phase",
      [](const ComplexMatrix& u, const ComplexMatrix& v, double tol) {
        const PhaseMatch r = equal_up_to_global_phase(u, v, tol);
        return py::make_tuple(r.equal, r.phase, r.deviation);
      },
      py::arg("u"), py::arg("v"), py::arg("tol") = 1e-10);

  m.def("choi_from_unitary", [](const ComplexMatrix& u) { return choi_from_unitary(u).matrix; });
  m.def("kraus_to_choi", [](const std::vector<ComplexMatrix>& ops) { return kraus_to_choi(KrausSet{ops}).matrix; });
  m.def("choi_to_kraus", [](const ComplexMatrix& c) { return choi_to_kraus(as_choi(c)).operators; });
  m.def("apply_choi", [](const ComplexMatrix& c, const ComplexMatrix& rho) { return apply_choi(as_choi(c), rho); });
  m.def("apply_kraus", [](const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho) {
    return apply_kraus(KrausSet{ops}, rho);
  });
  m.def("outcome_probability", [](const ComplexMatrix& c, const ComplexMatrix& prep, const ComplexMatrix& proj) {
    return outcome_probability(as_choi(c), prep, proj);
  });
  m.def("choi_to_chi", [](const ComplexMatrix& c) {
    const ChoiMatrix choi = as_choi(c);
    const ChiMatrix chi = choi_to_chi(choi, PauliBasis::for_qubits(qubits_of(choi.dim_in)));
    return py::make_tuple(chi.matrix, chi.basis.labels);
  });
  m.def("chi_to_choi", [](const ComplexMatrix& chi) {
    return chi_to_choi(ChiMatrix{chi, PauliBasis::for_qubits(qubits_of(static_cast<std::size_t>(
                                             std::llround(std::sqrt(static_cast<double>(chi.rows()))))))})
        .matrix;
  });
  m.def("choi_to_ptm", [](const ComplexMatrix& c) { return choi_to_ptm(as_choi(c)).matrix; });
  m.def(
      "is_cptp",
      [](const ComplexMatrix& c, double tol) {
        const CptpReport r = is_cptp(as_choi(c), tol);
        py::dict d;
        d["hermitian_dev"] = r.hermitian_dev;
        d["min_eig"] = r.min_eig;
        d["tp_dev"] = r.tp_dev;
        d["passes"] = r.passes;
        return d;
      },
      py::arg("choi"), py::arg("tol") = 1e-9);
  m.def(
      "project_cptp",
      [](const ComplexMatrix& c, double tol, std::size_t max_iter) {
        const ProjectionResult r = project_cptp(as_choi(c), tol, max_iter);
        return py::make_tuple(r.choi.matrix, r.converged, r.iterations);
      },
      py::arg("choi"), py::arg("tol") = 1e-10, py::arg("max_iter") = 20000);

  m.def("process_fidelity", [](const ComplexMatrix& measured, const ComplexMatrix& ideal) {
    return process_fidelity(as_choi(measured), as_choi(ideal)).value;
  });
  m.def("state_fidelity", &state_fidelity);
  m.def("average_gate_fidelity", &average_gate_fidelity, py::arg("process_fidelity"), py::arg("dim"));

  m.def("depolarizing_kraus", [](double p, std::size_t k) { return depolarizing_kraus(p, k).operators; },
        py::arg("p"), py::arg("num_qubits"));
  m.def("damping_kraus", [](double t1, double t2, double t) { return damping_kraus(t1, t2, t).operators; },
        py::arg("t1"), py::arg("t2"), py::arg("duration"));

  py::class_<NoiseModel>(m, "NoiseModel")
      .def_readonly("id", &NoiseModel::id)
      .def_readonly("num_qubits", &NoiseModel::num_qubits)
      .def_readonly("warnings", &NoiseModel::warnings)
      .def_property_readonly("readout_confusion", [](const NoiseModel& n) {
        std::vector<Eigen::Matrix2d> out(n.readout_confusion.begin(), n.readout_confusion.end());
        return out;
      });
  m.def(
      "noise_model",
      [](const std::string& calib_path, const std::vector<std::size_t>& layout) {
        return noise_model_from_calibration(load_calibration(calib_path), layout);
      },
      py::arg("calib_path"), py::arg("layout") = std::vector<std::size_t>{0, 1});

  m.def(
      "execute",
      [](const Circuit& c, const NoiseModel* noise, std::uint64_t shots, std::uint64_t seed) {
        ExecutionResult r;
        {
          py::gil_scoped_release release;
          r = execute_circuit(c, noise, shots, seed);
        }
        py::dict out;
        out["counts"] = counts_dict(r.counts);
        out["probabilities"] = r.probabilities;
        out["shots"] = r.counts.shots;
        return out;
      },
      py::arg("circuit"), py::arg("noise") = nullptr, py::arg("shots") = 7168, py::arg("seed") = 1);

  m.def(
      "qpt",
      [](const Circuit& c, const NoiseModel* noise, std::uint64_t shots, std::uint64_t seed, bool exact,
         bool cptp) {
        ReconstructionOptions ro;
        ro.method = cptp ? ReconstructionMethod::kLinearInversionThenCptp : ReconstructionMethod::kLinearInversion;
        ExecutionOptions eo;
        eo.exact = exact;
        QptResult r;
        {
          py::gil_scoped_release release;
          r = qpt(c, noise, shots, seed, ro, eo);
        }
        py::dict out;
        out["choi"] = r.choi.matrix;
        out["raw"] = r.raw.matrix;
        out["ideal"] = r.ideal.matrix;
        out["fidelity"] = r.report.process_fidelity;
        out["average_gate_fidelity"] = r.report.average_gate_fidelity;
        out["min_eig"] = r.report.min_eigenvalue;
        out["tp_dev"] = r.report.tp_deviation;
        out["converged"] = r.converged;
        out["iterations"] = r.iterations;
        out["report_json"] = report_json(r).dump();
        out["dataset_json"] = to_json(r.dataset).dump();
        return out;
      },
      py::arg("circuit"), py::arg("noise") = nullptr, py::arg("shots") = 11000, py::arg("seed") = 1,
      py::arg("exact") = false, py::arg("cptp") = true);

  m.def(
      "gate_check",
      [](const std::string& corrupt) {
        py::list out;
        for (const GateCheck& g : gate_checks(corrupt)) {
          py::dict d;
          d["identity"] = g.identity;
          d["pass"] = g.pass;
          d["deviation"] = g.deviation;
          d["detail"] = g.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("corrupt") = "");

  m.def("hinton_svg", &hinton_svg, py::arg("matrix"), py::arg("labels"), py::arg("title") = "");
  m.def("city_svg", &city_svg, py::arg("matrix"), py::arg("labels"), py::arg("title") = "");

  py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_ValueError);
  py::register_exception<TomographyError>(m, "TomographyError", PyExc_RuntimeError);
}
