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

#include "choiqpt/noise.h"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace choiqpt {
namespace {

double required_number(const nlohmann::json& row, const char* key,
                       const std::string& where) {
  if (!row.contains(key)) {
    throw CalibrationError(where + ": missing field '" + key + "'");
  }
  if (!row.at(key).is_number()) {
    throw CalibrationError(where + ": field '" + key + "' is not a number");
  }
  return row.at(key).get<double>();
}

double probability(double p, const char* key, const std::string& where) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw CalibrationError(where + ": '" + key + "' must lie in [0, 1]");
  }
  return p;
}

double positive_time(double t, const char* key, const std::string& where) {
  if (!(t > 0.0)) throw CalibrationError(where + ": '" + key + "' must be positive");
  return t;
}

// Shrinks a composed Kraus set to at most d^2 operators.
KrausSet canonical(const KrausSet& k) { return choi_to_kraus(kraus_to_choi(k)); }

}  // namespace

const QubitCalibration& DeviceCalibration::qubit(std::size_t index) const {
  for (const auto& q : qubits) {
    if (q.index == index) return q;
  }
  throw CalibrationError("calibration has no qubit " + std::to_string(index));
}

double DeviceCalibration::cnot_error(std::size_t a, std::size_t b) const {
  for (const auto& c : cnots) {
    if ((c.control == a && c.target == b) || (c.control == b && c.target == a)) {
      return c.error;
    }
  }
  return kMedianCnotError;
}

DeviceCalibration parse_calibration(const nlohmann::json& j) {
  DeviceCalibration calib;
  calib.name = j.value("name", std::string{});
  if (!j.contains("qubits") || !j.at("qubits").is_array()) {
    throw CalibrationError("calibration: missing 'qubits' array");
  }
  for (const auto& row : j.at("qubits")) {
    const std::string where =
        "qubit row " + (row.contains("index") ? row.at("index").dump() : "?");
    QubitCalibration q;
    const double index = required_number(row, "index", where);
    if (index < 0 || index != std::floor(index)) {
      throw CalibrationError(where + ": 'index' must be a non-negative integer");
    }
    q.index = static_cast<std::size_t>(index);
    q.t1 = positive_time(required_number(row, "t1_us", where), "t1_us", where) * 1e-6;
    q.t2 = positive_time(required_number(row, "t2_us", where), "t2_us", where) * 1e-6;
    q.frequency = required_number(row, "freq_ghz", where) * 1e9;
    q.anharmonicity = required_number(row, "anharm_ghz", where) * 1e9;
    q.readout_err = probability(required_number(row, "readout_err", where), "readout_err", where);
    q.p_meas0_prep1 = probability(required_number(row, "p01", where), "p01", where);
    q.p_meas1_prep0 = probability(required_number(row, "p10", where), "p10", where);
    const double readout_ns = required_number(row, "readout_ns", where);
    if (readout_ns < 0) throw CalibrationError(where + ": 'readout_ns' is negative");
    q.readout_length = readout_ns * 1e-9;
    if (row.contains("sx_error")) {
      q.sx_error = probability(required_number(row, "sx_error", where), "sx_error", where);
    }
    for (const auto& other : calib.qubits) {
      if (other.index == q.index) throw CalibrationError(where + ": duplicate qubit index");
    }
    calib.qubits.push_back(q);
  }
  if (j.contains("cnot")) {
    for (const auto& row : j.at("cnot")) {
      const std::string where = "cnot row";
      CnotCalibration c;
      c.control = static_cast<std::size_t>(required_number(row, "control", where));
      c.target = static_cast<std::size_t>(required_number(row, "target", where));
      c.error = probability(required_number(row, "error", where), "error", where);
      calib.cnots.push_back(c);
    }
  }
  if (j.contains("durations_ns")) {
    const auto& d = j.at("durations_ns");
    if (d.contains("sx")) {
      const double sx = required_number(d, "sx", "durations_ns");
      if (sx < 0) throw CalibrationError("durations_ns: 'sx' is negative");
      calib.durations.single_qubit = sx * 1e-9;
    }
    if (d.contains("cnot")) {
      const double cx = required_number(d, "cnot", "durations_ns");
      if (cx < 0) throw CalibrationError("durations_ns: 'cnot' is negative");
      calib.durations.cnot = cx * 1e-9;
    }
  }
  return calib;
}

DeviceCalibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CalibrationError("cannot open calibration file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CalibrationError(path + ": " + e.what());
  }
  return parse_calibration(j);
}

KrausSet damping_kraus(double t1, double t2, double duration) {
  if (!(t1 > 0.0)) throw CalibrationError("damping_kraus: t1 must be positive");
  if (!(t2 > 0.0)) throw CalibrationError("damping_kraus: t2 must be positive");
  if (duration < 0.0) throw CalibrationError("damping_kraus: negative duration");
  const double t2_eff = std::min(t2, 2.0 * t1);
  const double gamma = -std::expm1(-duration / t1);
  const double dephasing_rate = 1.0 / t2_eff - 1.0 / (2.0 * t1);
  const double lambda = -std::expm1(-2.0 * duration * dephasing_rate);

  ComplexMatrix a0(2, 2), a1(2, 2), p0(2, 2), p1(2, 2);
  a0 << 1, 0, 0, std::sqrt(1 - gamma);
  a1 << 0, std::sqrt(gamma), 0, 0;
  p0 << 1, 0, 0, std::sqrt(1 - lambda);
  p1 << 0, 0, 0, std::sqrt(lambda);

  KrausSet out;
  for (const auto* p : {&p0, &p1}) {
    for (const auto* a : {&a0, &a1}) {
      ComplexMatrix k = (*p) * (*a);
      if (k.cwiseAbs().maxCoeff() > 0.0) out.operators.push_back(std::move(k));
    }
  }
  return out;
}

KrausSet depolarizing_kraus(double p, std::size_t num_qubits) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw CalibrationError("depolarizing_kraus: p must lie in [0, 1]");
  }
  const PauliBasis basis = PauliBasis::for_qubits(num_qubits);
  const double d = static_cast<double>(basis.dim());
  KrausSet k;
  k.operators.push_back(std::sqrt(1.0 - p + p / (d * d)) * basis.operators[0]);
  if (p == 0.0) return k;
  for (std::size_t m = 1; m < basis.operators.size(); ++m) {
    k.operators.push_back(std::sqrt(p) / d * basis.operators[m]);
  }
  return k;
}

ConfusionMatrix readout_confusion(const QubitCalibration& q) {
  ConfusionMatrix m;
  m << 1.0 - q.p_meas1_prep0, q.p_meas0_prep1,
       q.p_meas1_prep0, 1.0 - q.p_meas0_prep1;
  return m;
}

const KrausSet* NoiseModel::find(const std::string& name,
                                 const std::vector<std::size_t>& qubits) const {
  const auto it = gate_noise.find(GateKey{name, qubits});
  return it == gate_noise.end() ? nullptr : &it->second;
}

NoiseModel noise_model_from_calibration(const DeviceCalibration& calib,
                                        const std::vector<std::size_t>& layout) {
  NoiseModel model;
  model.num_qubits = layout.size();
  model.id = calib.name.empty() ? "calibration" : calib.name;
  model.id += ":layout";
  for (std::size_t p : layout) model.id += "-" + std::to_string(p);

  std::vector<const QubitCalibration*> rows;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (layout[i] == layout[j]) {
        throw CalibrationError("layout maps two logical qubits to physical qubit " +
                               std::to_string(layout[i]));
      }
    }
  }
  for (std::size_t p : layout) {
    const QubitCalibration& q = calib.qubit(p);
    if (q.t2 > 2.0 * q.t1) {
      model.warnings.push_back("qubit " + std::to_string(p) + ": T2 exceeds 2*T1, clamped to " +
                               std::to_string(2.0 * q.t1 * 1e6) + " us");
    }
    rows.push_back(&q);
  }

  const double t_1q = calib.durations.single_qubit;
  const double t_cx = calib.durations.cnot;
  model.gate_durations = {{"SX", t_1q}, {"X", t_1q}, {"CNOT", t_cx}, {"RZ", 0.0}};
  double readout = 0.0;
  for (const auto* q : rows) readout = std::max(readout, q->readout_length);
  model.gate_durations["MEASURE"] = readout;

  std::vector<KrausSet> damping_1q, damping_cx;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const QubitCalibration& q = *rows[i];
    damping_1q.push_back(damping_kraus(q.t1, q.t2, t_1q));
    damping_cx.push_back(damping_kraus(q.t1, q.t2, t_cx));
    const KrausSet single =
        canonical(compose(depolarizing_kraus(q.sx_error, 1), damping_1q.back()));
    model.gate_noise[GateKey{"SX", {i}}] = single;
    model.gate_noise[GateKey{"X", {i}}] = single;
    model.readout_confusion.push_back(readout_confusion(q));
  }
  for (std::size_t a = 0; a < layout.size(); ++a) {
    for (std::size_t b = 0; b < layout.size(); ++b) {
      if (a == b) continue;
      const double p = calib.cnot_error(layout[a], layout[b]);
      model.gate_noise[GateKey{"CNOT", {a, b}}] =
          canonical(compose(depolarizing_kraus(p, 2), tensor(damping_cx[a], damping_cx[b])));
    }
  }
  return model;
}

}  // namespace choiqpt
