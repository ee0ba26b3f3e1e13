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

#include "choiqpt/gates.h"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace choiqpt;
using std::numbers::pi;

namespace {

const Complex kA{0.5, 0.5};   // (1+i)/2
const Complex kB{0.5, -0.5};  // (1-i)/2

ComplexVector basis_ket(Eigen::Index i) {
  ComplexVector v = ComplexVector::Zero(4);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST(gates, sqscz_matrix_entries) {
  const ComplexMatrix u = gate_unitary("SQSCZ");
  EXPECT_EQ(u(0, 0), Complex(1.0));
  EXPECT_EQ(u(1, 1), kA);
  EXPECT_EQ(u(1, 2), kB);
  EXPECT_EQ(u(2, 1), kB);
  EXPECT_EQ(u(2, 2), kA);
  EXPECT_EQ(u(3, 3), Complex(0.0, 1.0));
  EXPECT_EQ(u(0, 3), Complex(0.0));
}

TEST(gates, sqrt_cz_is_diagonal_phase) {
  const ComplexMatrix u = gate_unitary("SQRT_CZ");
  ComplexMatrix expect = identity(4);
  expect(3, 3) = Complex(0.0, 1.0);
  EXPECT_EQ(u, expect);
}

TEST(gates, rz_zero_is_identity) {
  EXPECT_TRUE(equal_up_to_global_phase(gate_unitary("RZ", {0.0}), identity(2), 1e-15).equal);
}

TEST(gates, all_library_gates_unitary) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (const auto& info : gate_library()) {
    std::vector<double> params(info.num_params);
    for (auto& p : params) p = angle(rng);
    const ComplexMatrix u = gate_unitary(info.name, params);
    EXPECT_EQ(u.rows(), Eigen::Index{1} << info.num_qubits) << info.name;
    EXPECT_LT(unitary_deviation(u), 1e-12) << info.name;
  }
}

TEST(gates, unknown_gate_and_wrong_arity) {
  EXPECT_THROW(gate_unitary("TOFFOLI"), GateError);
  EXPECT_THROW(gate_unitary("RZ"), GateError);
  EXPECT_THROW(gate_unitary("X", {1.0}), GateError);
  Circuit c(2);
  EXPECT_THROW(c.add("CNOT", {0, 0}), GateError);
  EXPECT_THROW(c.add("CNOT", {0, 2}), GateError);
  EXPECT_THROW(c.add("H", {0, 1}), GateError);
}

TEST(gates, sx_squares_to_x) {
  const ComplexMatrix sx = gate_unitary("SX");
  EXPECT_LT(max_abs_diff(sx * sx, gate_unitary("X")), 1e-15);
}

TEST(gates, fusion_identity) {
  const ComplexMatrix swap_half = gate_unitary("SQRT_SWAP");
  const ComplexMatrix cz_half = gate_unitary("SQRT_CZ");
  const ComplexMatrix u = gate_unitary("SQSCZ");
  EXPECT_LT(max_abs_diff(swap_half * cz_half, u), 1e-12);
  EXPECT_LT(max_abs_diff(cz_half * swap_half, u), 1e-12);
  EXPECT_LT(max_abs_diff(swap_half * swap_half, gate_unitary("SWAP")), 1e-12);
  EXPECT_LT(max_abs_diff(cz_half * cz_half, gate_unitary("CZ")), 1e-12);
}

TEST(gates, sqscz_basis_action) {
  const ComplexMatrix u = gate_unitary("SQSCZ");
  EXPECT_LT((u * basis_ket(0) - basis_ket(0)).norm(), 1e-15);
  EXPECT_LT((u * basis_ket(1) - (kA * basis_ket(1) + kB * basis_ket(2))).norm(), 1e-15);
  EXPECT_LT((u * basis_ket(2) - (kB * basis_ket(1) + kA * basis_ket(2))).norm(), 1e-15);
  EXPECT_LT((u * basis_ket(3) - Complex(0, 1) * basis_ket(3)).norm(), 1e-15);
}

TEST(gates, embed_respects_qubit_order) {
  // CNOT with control on qubit 1 and target on qubit 0 maps |01> -> |11>.
  const ComplexMatrix u = embed_operator(gate_unitary("CNOT"), {1, 0}, 2);
  EXPECT_EQ(u * basis_ket(1), basis_ket(3));
  EXPECT_EQ(u * basis_ket(2), basis_ket(2));
  // X on qubit 0 of three flips the most significant bit.
  const ComplexMatrix x0 = embed_operator(gate_unitary("X"), {0}, 3);
  EXPECT_EQ(x0(4, 0), Complex(1.0));
}

TEST(gates, circuit_unitary_basics) {
  EXPECT_EQ(circuit_unitary(Circuit(2)), identity(4));
  Circuit twice(2);
  twice.add("CNOT", {0, 1}).add("CNOT", {0, 1});
  EXPECT_LT(max_abs_diff(circuit_unitary(twice), identity(4)), 1e-15);
  // first gate acts first: H then X differs from X then H
  Circuit hx(1);
  hx.add("H", {0}).add("X", {0});
  EXPECT_LT(max_abs_diff(circuit_unitary(hx), gate_unitary("X") * gate_unitary("H")), 1e-15);
}

TEST(gates, global_phase_comparison) {
  std::mt19937_64 rng(9);
  const ComplexMatrix u = testutil::random_unitary(4, rng);
  const PhaseMatch m = equal_up_to_global_phase(std::exp(Complex(0, pi / 4)) * u, u, 1e-12);
  EXPECT_TRUE(m.equal);
  EXPECT_NEAR(m.phase, pi / 4, 1e-12);
  EXPECT_FALSE(equal_up_to_global_phase(identity(4), gate_unitary("CNOT"), 1e-6).equal);
  EXPECT_THROW(equal_up_to_global_phase(identity(2), identity(4), 1e-6), DimensionError);
}

TEST(gates, sqscz_decomposition_matches) {
  const Circuit c = sqscz_decomposition();
  const PhaseMatch m = equal_up_to_global_phase(circuit_unitary(c), gate_unitary("SQSCZ"), 1e-10);
  EXPECT_TRUE(m.equal) << m.deviation;
  EXPECT_EQ(c.count("CNOT"), 2u);
  for (const auto& g : c.gates) {
    EXPECT_TRUE(g.name == "RZ" || g.name == "SX" || g.name == "CNOT") << g.name;
  }
}

TEST(gates, cnot_from_sqscz_matches) {
  const Circuit c = cnot_from_sqscz();
  const PhaseMatch m = equal_up_to_global_phase(circuit_unitary(c), gate_unitary("CNOT"), 1e-10);
  EXPECT_TRUE(m.equal) << m.deviation;
  EXPECT_EQ(c.count("SQSCZ"), 2u);
  Circuit twice(2);
  twice.append(c).append(c);
  EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(twice), identity(4), 1e-10).equal);
}

TEST(gates, single_qubit_native_form) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix u = testutil::random_unitary(2, rng);
    const Circuit c = single_qubit_to_native(u, 0, 1);
    EXPECT_LE(c.count("SX"), 2u);
    EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(c), u, 1e-10).equal);
  }
  EXPECT_EQ(single_qubit_to_native(gate_unitary("H"), 0, 1).count("SX"), 1u);
  EXPECT_EQ(single_qubit_to_native(gate_unitary("RZ", {0.3}), 0, 1).count("SX"), 0u);
}

TEST(gates, lowering_preserves_every_gate) {
  const std::set<std::string> native = {"RZ", "SX", "X", "CNOT"};
  for (const auto& info : gate_library()) {
    Circuit c(3);
    std::vector<double> params(info.num_params, 0.731);
    if (info.num_qubits == 1) {
      c.add(std::string(info.name), {1}, params);
    } else {
      c.add(std::string(info.name), {2, 0}, params);
    }
    const Circuit lowered = lower_to_native(c);
    for (const auto& g : lowered.gates) EXPECT_TRUE(native.contains(g.name)) << g.name;
    EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(lowered), circuit_unitary(c), 1e-10).equal)
        << info.name;
  }
  Circuit s(2);
  s.add("SQSCZ", {0, 1});
  EXPECT_EQ(lower_to_native(s).count("CNOT"), 2u);
}

TEST(gates, circuit_json_round_trip) {
  const Circuit c = cnot_from_sqscz();
  const nlohmann::json j = c;
  EXPECT_EQ(j.at("num_qubits"), 2);
  EXPECT_EQ(j.at("gates").at(0).at("name"), "H");
  EXPECT_EQ(j.get<Circuit>(), c);
  const auto bad = nlohmann::json::parse(R"({"num_qubits":1,"gates":[{"name":"CNOT","qubits":[0,1]}]})");
  EXPECT_THROW(bad.get<Circuit>(), GateError);
}
