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

#include "choiqpt/metrics.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "choiqpt/gates.h"
#include "choiqpt/noise.h"
#include "test_util.h"

using namespace choiqpt;

namespace {

ComplexMatrix ket_projector(const ComplexVector& v) { return v * v.adjoint(); }

// <psi| E(|psi><psi|) |psi> averaged over the six Pauli eigenstates (a 2-design).
double octahedral_average(const KrausSet& k) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0, 1);
  std::vector<ComplexVector> states;
  for (const auto& [a, b] : std::vector<std::pair<Complex, Complex>>{
           {1, 0}, {0, 1}, {s, s}, {s, -s}, {s, s * i}, {s, -s * i}}) {
    ComplexVector v(2);
    v << a, b;
    states.push_back(v);
  }
  double total = 0;
  for (const auto& v : states) total += (v.adjoint() * apply_kraus(k, ket_projector(v)) * v)(0, 0).real();
  return total / static_cast<double>(states.size());
}

}  // namespace

TEST(metrics, identical_unitaries_have_unit_fidelity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = testutil::random_unitary(4, rng);
    const ProcessFidelity f = process_fidelity(choi_from_unitary(u), choi_from_unitary(u));
    EXPECT_NEAR(f.value, 1.0, 1e-10);
    EXPECT_TRUE(f.ideal_is_pure);
    // global phase is invisible
    const ChoiMatrix phased = choi_from_unitary(std::polar(1.0, 0.7 * trial) * u);
    EXPECT_NEAR(process_fidelity(phased, choi_from_unitary(u)).value, 1.0, 1e-10);
  }
}

TEST(metrics, depolarized_gate_fidelity) {
  const ComplexMatrix u = gate_unitary("SQSCZ");
  for (double p : {0.0, 0.01, 0.2, 1.0}) {
    const KrausSet noisy = compose(depolarizing_kraus(p, 2), KrausSet{{u}});
    EXPECT_NEAR(process_fidelity(kraus_to_choi(noisy), choi_from_unitary(u)).value,
                1 - p + p / 16.0, 1e-12);
  }
}

TEST(metrics, pure_ideal_overlap_oracle) {
  // F = |Tr(U^dagger V)|^2 / d^2 for two unitaries
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = testutil::random_unitary(4, rng);
    const ComplexMatrix v = testutil::random_unitary(4, rng);
    const double oracle = std::norm((u.adjoint() * v).trace()) / 16.0;
    EXPECT_NEAR(process_fidelity(choi_from_unitary(v), choi_from_unitary(u)).value, oracle, 1e-10);
  }
}

TEST(metrics, unitary_invariance) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausSet e = testutil::random_kraus(4, 3, rng);
    const ComplexMatrix u = testutil::random_unitary(4, rng);
    const ComplexMatrix v = testutil::random_unitary(4, rng);
    const ComplexMatrix w = testutil::random_unitary(4, rng);
    const double base = process_fidelity(kraus_to_choi(e), choi_from_unitary(u)).value;
    const KrausSet wrapped = compose(KrausSet{{v}}, compose(e, KrausSet{{w}}));
    const double moved = process_fidelity(kraus_to_choi(wrapped), choi_from_unitary(v * u * w)).value;
    EXPECT_NEAR(base, moved, 1e-10);
    EXPECT_GE(base, -1e-12);
    EXPECT_LE(base, 1.0 + 1e-12);
  }
}

TEST(metrics, measured_trace_is_normalized) {
  const ChoiMatrix c = choi_from_unitary(gate_unitary("CZ"));
  ChoiMatrix scaled = c;
  scaled.matrix *= 0.5;
  EXPECT_NEAR(process_fidelity(scaled, c).value, 1.0, 1e-12);
}

TEST(metrics, mixed_ideal_falls_back_to_uhlmann) {
  const ChoiMatrix dep = kraus_to_choi(depolarizing_kraus(0.5, 1));
  const ChoiMatrix ident = choi_from_unitary(identity(2));
  const ProcessFidelity f = process_fidelity(ident, dep);
  EXPECT_FALSE(f.ideal_is_pure);
  // pure vs mixed: Uhlmann reduces to <phi|sigma|phi>
  EXPECT_NEAR(f.value, 1 - 0.5 + 0.5 / 4.0, 1e-10);
  EXPECT_NEAR(f.value, state_fidelity(ident.normalized(), dep.normalized()), 1e-12);
}

TEST(metrics, state_fidelity_cases) {
  std::mt19937_64 rng(34);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2), one = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1;
  one(1, 1) = 1;
  EXPECT_NEAR(state_fidelity(zero, one), 0.0, 1e-12);
  EXPECT_NEAR(state_fidelity(zero, identity(2) / 2.0), 0.5, 1e-12);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = testutil::random_density(3, rng);
    const ComplexMatrix b = testutil::random_density(3, rng);
    EXPECT_NEAR(state_fidelity(a, a), 1.0, 1e-8);
    EXPECT_NEAR(state_fidelity(a, b), state_fidelity(b, a), 1e-8);
    const ComplexMatrix psi = testutil::random_pure(3, rng);
    const ComplexMatrix phi = testutil::random_pure(3, rng);
    EXPECT_NEAR(state_fidelity(psi, phi), (psi * phi).trace().real(), 1e-8);
  }
  ComplexMatrix bad = zero;
  bad(1, 1) = -0.1;
  EXPECT_THROW(state_fidelity(bad, zero), std::invalid_argument);
  EXPECT_THROW(state_fidelity(zero, identity(3)), DimensionError);
}

TEST(metrics, average_gate_fidelity_matches_two_design) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausSet e = testutil::random_kraus(2, 2, rng);
    const double fp = process_fidelity(kraus_to_choi(e), choi_from_unitary(identity(2))).value;
    EXPECT_NEAR(average_gate_fidelity(fp, 2), octahedral_average(e), 1e-10);
  }
  EXPECT_DOUBLE_EQ(average_gate_fidelity(1.0, 4), 1.0);
  EXPECT_DOUBLE_EQ(average_gate_fidelity(0.0, 4), 0.2);
}

TEST(metrics, report_fields) {
  const ChoiMatrix ideal = choi_from_unitary(gate_unitary("SQSCZ"));
  const FidelityReport r = fidelity_report(ideal, ideal);
  EXPECT_NEAR(r.process_fidelity, 1.0, 1e-12);
  EXPECT_LE(r.process_fidelity, 1.0);
  EXPECT_NEAR(r.average_gate_fidelity, 1.0, 1e-12);
  EXPECT_LT(r.tp_deviation, 1e-12);
  EXPECT_GT(r.min_eigenvalue, -1e-12);
  const nlohmann::json j = to_json(r);
  EXPECT_TRUE(j.contains("process_fidelity"));
  EXPECT_TRUE(j.contains("average_gate_fidelity"));
  EXPECT_THROW(process_fidelity(ideal, choi_from_unitary(identity(2))), DimensionError);
}
