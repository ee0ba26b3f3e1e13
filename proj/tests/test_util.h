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

// Random test inputs. Generated with std::mt19937_64 so every test run sees
// the same sequence.

#include <cmath>
#include <random>

#include "choiqpt/channels.h"
#include "choiqpt/numerics.h"

namespace choiqpt::testutil {

inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
inline ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(n, n, rng));
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex diag = r(i, i);
    q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  return hermitian_part(ginibre(n, n, rng));
}

/// Full-rank random density matrix (Hilbert-Schmidt measure).
inline ComplexMatrix random_density(std::size_t d, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  const ComplexMatrix g = ginibre(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline ComplexMatrix random_pure(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix v = ginibre(static_cast<Eigen::Index>(d), 1, rng);
  return v * v.adjoint() / v.squaredNorm();
}

/// Random CPTP map: the first `rank` d-row blocks of a Haar unitary on
/// C^d (x) C^rank (a Stinespring isometry).
inline KrausSet random_kraus(std::size_t d, std::size_t rank, std::mt19937_64& rng) {
  const ComplexMatrix u = random_unitary(d * rank, rng);
  KrausSet k;
  const auto n = static_cast<Eigen::Index>(d);
  for (std::size_t i = 0; i < rank; ++i) {
    k.operators.push_back(u.block(static_cast<Eigen::Index>(i) * n, 0, n, n));
  }
  return k;
}

/// Random projector of rank 1..d-1.
inline ComplexMatrix random_projector(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix u = random_unitary(d, rng);
  std::uniform_int_distribution<std::size_t> pick(1, d - 1);
  const auto rank = static_cast<Eigen::Index>(pick(rng));
  return u.leftCols(rank) * u.leftCols(rank).adjoint();
}

}  // namespace choiqpt::testutil
