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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace choiqpt {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Every state, unitary and channel
/// representation in the library is stored as one of these.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kHermTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

/// Thrown for shape mismatches and violated preconditions on matrix inputs.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Subsystem { A, B };

ComplexMatrix identity(std::size_t dim);

/// Builds a matrix from a nested row list; throws on ragged input.
ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

/// Kronecker product; entry (i*b.rows+k, j*b.cols+l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of a bipartite operator on H_A (x) H_B, keeping `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep);

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized
/// before decomposition, so small anti-Hermitian noise is discarded.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

/// max |m - m^dagger|
double hermitian_deviation(const ComplexMatrix& m);

/// max |u^dagger u - I|
double unitary_deviation(const ComplexMatrix& u);

bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);

/// (m + m^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Largest absolute entrywise difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Applies f to each eigenvalue of a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
  const HermitianEigen e = eig_hermitian(m);
  Eigen::VectorXcd mapped(static_cast<Eigen::Index>(e.values.size()));
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    mapped(static_cast<Eigen::Index>(i)) = Complex(f(e.values[i]), 0.0);
  }
  return e.vectors * mapped.asDiagonal() * e.vectors.adjoint();
}

bool all_finite(const ComplexMatrix& m);

/// Throws DimensionError with `what` unless m is square.
void require_square(const ComplexMatrix& m, const std::string& what);

/// Column-stacked vectorization: v[k*rows + j] = m(j, k).
ComplexVector col_vec(const ComplexMatrix& m);

/// Inverse of col_vec for a square matrix of dimension d.
ComplexMatrix col_unvec(const ComplexVector& v, std::size_t d);

}  // namespace choiqpt
