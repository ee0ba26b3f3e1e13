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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "choiqpt/numerics.h"

namespace choiqpt {

class ChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Choi operator C = sum_{k,m} |k><m| (x) E(|k><m|), input factor first,
/// unnormalized (trace d_in for trace-preserving maps).
struct ChoiMatrix {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  ComplexMatrix matrix;

  ChoiMatrix() = default;
  ChoiMatrix(std::size_t d_in, std::size_t d_out, ComplexMatrix m);
  /// Square channel; dimension inferred from the d^2 x d^2 matrix.
  explicit ChoiMatrix(ComplexMatrix m);

  /// C / Tr(C), a bipartite density operator.
  ComplexMatrix normalized() const;
};

/// E(rho) = sum_i K_i rho K_i^dagger.
struct KrausSet {
  std::vector<ComplexMatrix> operators;

  std::size_t dim_in() const;
  std::size_t dim_out() const;
  /// max |sum K^dagger K - I|
  double tp_deviation() const;
};

/// K-qubit Pauli strings in lexicographic order II, IX, IY, IZ, XI, ...
struct PauliBasis {
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> operators;

  static PauliBasis for_qubits(std::size_t num_qubits);
  std::size_t dim() const;
  /// max |Tr(W_m^dagger W_n) - d delta_mn|
  double orthogonality_deviation() const;
};

/// Process matrix with E(rho) = sum_mn chi_mn W_m rho W_n^dagger. With
/// unnormalized Pauli operators a trace-preserving map has Tr(chi) = 1.
struct ChiMatrix {
  ComplexMatrix matrix;
  PauliBasis basis;
};

/// R[m,n] = Tr(W_m E(W_n)) / d.
struct PTMatrix {
  RealMatrix matrix;
  PauliBasis basis;
};

struct CptpReport {
  double hermitian_dev = 0.0;
  double min_eig = 0.0;
  double tp_dev = 0.0;  // ||Tr_out C - I||_F
  bool passes = false;
};

ChoiMatrix choi_from_unitary(const ComplexMatrix& u);
ChoiMatrix kraus_to_choi(const KrausSet& k);
KrausSet choi_to_kraus(const ChoiMatrix& c);

/// E(rho) = Tr_in[(rho^T (x) I) C]
ComplexMatrix apply_choi(const ChoiMatrix& c, const ComplexMatrix& rho);
ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho);

/// p = Tr[(prep^T (x) projector) C], evaluated without forming E(prep).
double outcome_probability(const ChoiMatrix& c, const ComplexMatrix& prep,
                           const ComplexMatrix& projector);

ChiMatrix choi_to_chi(const ChoiMatrix& c, const PauliBasis& basis);
ChoiMatrix chi_to_choi(const ChiMatrix& chi);
ComplexMatrix apply_chi(const ChiMatrix& chi, const ComplexMatrix& rho);

PTMatrix choi_to_ptm(const ChoiMatrix& c);

CptpReport is_cptp(const ChoiMatrix& c, double tol);

/// Channel applying `first` and then `second`.
KrausSet compose(const KrausSet& second, const KrausSet& first);
/// Tensor product channel acting on H_a (x) H_b.
KrausSet tensor(const KrausSet& a, const KrausSet& b);

/// {"dim": d, "re": [[...]], "im": [[...]]}
nlohmann::json matrix_to_json(const ComplexMatrix& m, std::size_t dim);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChoiMatrix& c);
nlohmann::json to_json(const ChiMatrix& chi);
nlohmann::json to_json(const PTMatrix& ptm);
ChoiMatrix choi_from_json(const nlohmann::json& j);

/// Comma-separated rows, full round-trip precision.
std::string matrix_to_csv(const RealMatrix& m);

}  // namespace choiqpt
