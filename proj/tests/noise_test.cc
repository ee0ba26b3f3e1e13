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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace choiqpt;

namespace {

const std::string kTable1 = std::string(CHOIQPT_DATA_DIR) + "/ibm_perth_tab1.json";
const std::string kTable3 = std::string(CHOIQPT_DATA_DIR) + "/ibm_perth_tab3.json";

nlohmann::json minimal_row() {
  return nlohmann::json{{"index", 0},        {"t1_us", 100.0},  {"t2_us", 80.0},
                        {"freq_ghz", 5.0},   {"anharm_ghz", -0.3}, {"readout_err", 0.02},
                        {"p01", 0.03},       {"p10", 0.01},     {"readout_ns", 700.0}};
}

// Brute-force overlap of two Choi matrices normalized to unit trace.
double choi_overlap(const ChoiMatrix& a, const ChoiMatrix& b) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < a.matrix.cols(); ++j)
      sum += (a.matrix(i, j) * b.matrix(j, i)).real();
  return sum / (a.matrix.trace().real() * b.matrix.trace().real());
}

}  // namespace

TEST(noise, parses_table1) {
  const DeviceCalibration calib = load_calibration(kTable1);
  ASSERT_EQ(calib.qubits.size(), 7u);
  EXPECT_DOUBLE_EQ(calib.qubit(3).t1, 168.64915374e-6);
  EXPECT_DOUBLE_EQ(calib.qubit(3).t2, 227.9672909e-6);
  EXPECT_DOUBLE_EQ(calib.qubit(6).p_meas0_prep1, 0.0126);
  EXPECT_DOUBLE_EQ(calib.qubit(6).p_meas1_prep0, 0.0102);
  EXPECT_DOUBLE_EQ(calib.qubit(0).frequency, 5.15755952e9);
  EXPECT_DOUBLE_EQ(calib.qubit(0).readout_length, 721.7777778e-9);
  EXPECT_DOUBLE_EQ(calib.cnot_error(0, 1), 0.00514);
  EXPECT_DOUBLE_EQ(calib.cnot_error(1, 0), 0.00514);
  EXPECT_DOUBLE_EQ(calib.cnot_error(0, 6), kMedianCnotError);
  EXPECT_DOUBLE_EQ(calib.durations.cnot, 300e-9);
}

TEST(noise, tables_without_sx_use_median) {
  const DeviceCalibration calib = load_calibration(kTable3);
  EXPECT_DOUBLE_EQ(calib.qubit(0).sx_error, kMedianSxError);
  EXPECT_DOUBLE_EQ(calib.qubit(2).t1, 18.130611e-6);
}

TEST(noise, parse_errors) {
  nlohmann::json missing = minimal_row();
  missing.erase("t2_us");
  EXPECT_THROW(parse_calibration({{"qubits", {missing}}}), CalibrationError);
  nlohmann::json negative = minimal_row();
  negative["t1_us"] = -5.0;
  EXPECT_THROW(parse_calibration({{"qubits", {negative}}}), CalibrationError);
  nlohmann::json bad_prob = minimal_row();
  bad_prob["p01"] = 1.5;
  EXPECT_THROW(parse_calibration({{"qubits", {bad_prob}}}), CalibrationError);
  EXPECT_THROW(parse_calibration(nlohmann::json::object()), CalibrationError);
  EXPECT_THROW(load_calibration("/nonexistent/calib.json"), CalibrationError);
  EXPECT_NO_THROW(parse_calibration({{"qubits", {minimal_row()}}}));
}

TEST(noise, damping_zero_duration_is_identity) {
  const KrausSet k = damping_kraus(100e-6, 80e-6, 0.0);
  ASSERT_EQ(k.operators.size(), 1u);
  EXPECT_EQ(k.operators[0], identity(2));
  EXPECT_THROW(damping_kraus(0.0, 1e-6, 1e-9), CalibrationError);
  EXPECT_THROW(damping_kraus(1e-6, 1e-6, -1.0), CalibrationError);
}

TEST(noise, pure_dephasing_limit) {
  const double t2 = 50e-6, t = 3e-6;
  const KrausSet k = damping_kraus(1e300, t2, t);
  ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  const ComplexMatrix out = apply_kraus(k, plus);
  // oracle: rho_01(t) = rho_01(0) exp(-t/T2), populations untouched
  EXPECT_NEAR(std::abs(out(0, 1)), 0.5 * std::exp(-t / t2), 1e-12);
  EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(out(1, 1).real(), 0.5, 1e-12);
}

TEST(noise, excited_population_decay) {
  const double t1 = 40e-6;
  const KrausSet k = damping_kraus(t1, 2 * t1, t1);
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  EXPECT_NEAR(apply_kraus(k, one)(1, 1).real(), std::exp(-1.0), 1e-12);
  // with T2 = 2 T1 coherences decay at rate 1/(2 T1) only
  ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  EXPECT_NEAR(std::abs(apply_kraus(k, plus)(0, 1)), 0.5 * std::exp(-0.5), 1e-12);
}

TEST(noise, t2_is_clamped_to_twice_t1) {
  const KrausSet clamped = damping_kraus(10e-6, 50e-6, 4e-6);
  const KrausSet limit = damping_kraus(10e-6, 20e-6, 4e-6);
  EXPECT_LT(max_abs_diff(kraus_to_choi(clamped).matrix, kraus_to_choi(limit).matrix), 1e-14);
}

TEST(noise, damping_is_trace_preserving_and_divisible) {
  std::mt19937_64 rng(3);
  const double t1 = 80e-6, t2 = 60e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const double t = 1e-6 * (1 + trial), s = 0.7e-6 * (2 + trial);
    const KrausSet kt = damping_kraus(t1, t2, t);
    EXPECT_LT(kt.tp_deviation(), 1e-10);
    EXPECT_GE(eig_hermitian(kraus_to_choi(kt).matrix).values.back(), -1e-9);
    const ComplexMatrix rho = testutil::random_density(2, rng);
    const ComplexMatrix two_step = apply_kraus(kt, apply_kraus(damping_kraus(t1, t2, s), rho));
    EXPECT_LT(max_abs_diff(two_step, apply_kraus(damping_kraus(t1, t2, t + s), rho)), 1e-9);
  }
}

TEST(noise, depolarizing_limits) {
  std::mt19937_64 rng(4);
  const ComplexMatrix rho = testutil::random_density(4, rng);
  EXPECT_LT(max_abs_diff(apply_kraus(depolarizing_kraus(0.0, 2), rho), rho), 1e-15);
  EXPECT_LT(max_abs_diff(apply_kraus(depolarizing_kraus(1.0, 2), rho), identity(4) / 4.0), 1e-15);
  EXPECT_LT(depolarizing_kraus(0.3, 2).tp_deviation(), 1e-12);
  EXPECT_THROW(depolarizing_kraus(1.2, 1), CalibrationError);
  EXPECT_THROW(depolarizing_kraus(-0.1, 1), CalibrationError);
}

TEST(noise, depolarizing_process_fidelity_oracle) {
  const ChoiMatrix ident = choi_from_unitary(identity(4));
  for (double p : {0.0, 0.05, 0.4, 1.0}) {
    const double overlap = choi_overlap(kraus_to_choi(depolarizing_kraus(p, 2)), ident);
    EXPECT_NEAR(overlap, (1 - p) + p / 16.0, 1e-12);
  }
}

TEST(noise, readout_confusion_from_table1) {
  const DeviceCalibration calib = load_calibration(kTable1);
  const ConfusionMatrix m = readout_confusion(calib.qubit(0));
  EXPECT_NEAR(m(0, 0), 0.973, 1e-15);
  EXPECT_NEAR(m(0, 1), 0.0292, 1e-15);
  EXPECT_NEAR(m(1, 0), 0.027, 1e-15);
  EXPECT_NEAR(m(1, 1), 0.9708, 1e-15);
  for (const auto& q : calib.qubits) {
    const ConfusionMatrix c = readout_confusion(q);
    EXPECT_NEAR(c.col(0).sum(), 1.0, 1e-12);
    EXPECT_NEAR(c.col(1).sum(), 1.0, 1e-12);
    EXPECT_GE(c.minCoeff(), 0.0);
  }
}

TEST(noise, cnot_channel_uses_table2_error) {
  DeviceCalibration calib = load_calibration(kTable1);
  calib.durations = GateDurations{0.0, 0.0};
  const NoiseModel model = noise_model_from_calibration(calib, {1, 2});
  const KrausSet* k = model.find("CNOT", {0, 1});
  ASSERT_NE(k, nullptr);
  const double p = 0.01136;
  EXPECT_NEAR(choi_overlap(kraus_to_choi(*k), choi_from_unitary(identity(4))), 1 - p + p / 16, 1e-12);
  EXPECT_NE(model.find("CNOT", {1, 0}), nullptr);
  EXPECT_EQ(model.find("RZ", {0}), nullptr);
}

TEST(noise, model_channels_are_cptp) {
  const NoiseModel model = noise_model_from_calibration(load_calibration(kTable1), {0, 1});
  EXPECT_EQ(model.num_qubits, 2u);
  EXPECT_EQ(model.readout_confusion.size(), 2u);
  for (const auto& [key, k] : model.gate_noise) {
    EXPECT_LT(k.tp_deviation(), 1e-8) << key.name;
    EXPECT_GE(eig_hermitian(kraus_to_choi(k).matrix).values.back(), -1e-9) << key.name;
    EXPECT_LE(k.operators.size(), 16u);
  }
  EXPECT_DOUBLE_EQ(model.gate_durations.at("MEASURE"), 721.7777778e-9);
}

TEST(noise, zero_noise_calibration_gives_identity_model) {
  nlohmann::json row = minimal_row();
  row["p01"] = 0.0;
  row["p10"] = 0.0;
  row["sx_error"] = 0.0;
  nlohmann::json row1 = row;
  row1["index"] = 1;
  const nlohmann::json j = {{"qubits", {row, row1}},
                            {"cnot", {{{"control", 0}, {"target", 1}, {"error", 0.0}}}},
                            {"durations_ns", {{"sx", 0}, {"cnot", 0}}}};
  const NoiseModel model = noise_model_from_calibration(parse_calibration(j), {0, 1});
  for (const auto& [key, k] : model.gate_noise) {
    const std::size_t d = static_cast<std::size_t>(k.operators.front().rows());
    EXPECT_LT(max_abs_diff(kraus_to_choi(k).matrix, choi_from_unitary(identity(d)).matrix), 1e-12);
  }
  for (const auto& m : model.readout_confusion) EXPECT_EQ(m, ConfusionMatrix::Identity());
}

TEST(noise, layout_errors_and_clamp_warning) {
  const DeviceCalibration calib = load_calibration(kTable1);
  EXPECT_THROW(noise_model_from_calibration(calib, {0, 9}), CalibrationError);
  EXPECT_THROW(noise_model_from_calibration(calib, {1, 1}), CalibrationError);
  EXPECT_TRUE(noise_model_from_calibration(calib, {0, 1}).warnings.empty());
  // tab3 qubit 2: T1 = 18.1 us, T2 = 52.1 us > 2 T1
  const NoiseModel m3 = noise_model_from_calibration(load_calibration(kTable3), {2, 1});
  ASSERT_EQ(m3.warnings.size(), 1u);
  EXPECT_NE(m3.warnings[0].find("qubit 2"), std::string::npos);
}
