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

#include "choiqpt/channels.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace choiqpt {
namespace {

constexpr double kKrausDropTol = 1e-10;
constexpr double kKrausNegTol = 1e-7;

std::size_t square_root_dim(Eigen::Index n) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Eigen::Index>(d * d) != n) {
    throw DimensionError("Choi matrix side " + std::to_string(n) +
                         " is not a perfect square");
  }
  return d;
}

// Column-stacked vectorization of a d_out x d_in operator; matches the
// (input, output) index order of the Choi matrix.
ComplexMatrix unvec_rect(const ComplexVector& v, std::size_t d_out,
                         std::size_t d_in) {
  ComplexMatrix m(static_cast<Eigen::Index>(d_out), static_cast<Eigen::Index>(d_in));
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    for (Eigen::Index j = 0; j < m.rows(); ++j) m(j, k) = v(k * m.rows() + j);
  }
  return m;
}

const std::array<ComplexMatrix, 4>& single_paulis() {
  static const std::array<ComplexMatrix, 4> paulis = [] {
    std::array<ComplexMatrix, 4> p;
    for (auto& m : p) m = ComplexMatrix::Zero(2, 2);
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return paulis;
}

}  // namespace

ChoiMatrix::ChoiMatrix(std::size_t d_in, std::size_t d_out, ComplexMatrix m)
    : dim_in(d_in), dim_out(d_out), matrix(std::move(m)) {
  const auto n = static_cast<Eigen::Index>(d_in * d_out);
  if (matrix.rows() != n || matrix.cols() != n) {
    throw DimensionError("ChoiMatrix: expected " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
  }
}

ChoiMatrix::ChoiMatrix(ComplexMatrix m) : matrix(std::move(m)) {
  require_square(matrix, "ChoiMatrix");
  dim_in = dim_out = square_root_dim(matrix.rows());
}

ComplexMatrix ChoiMatrix::normalized() const {
  const double tr = matrix.trace().real();
  if (std::abs(tr) < 1e-300) throw ChannelError("ChoiMatrix: zero trace");
  return matrix / tr;
}

std::size_t KrausSet::dim_in() const {
  if (operators.empty()) throw ChannelError("KrausSet: empty");
  return static_cast<std::size_t>(operators.front().cols());
}

std::size_t KrausSet::dim_out() const {
  if (operators.empty()) throw ChannelError("KrausSet: empty");
  return static_cast<std::size_t>(operators.front().rows());
}

double KrausSet::tp_deviation() const {
  ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_in()),
                                          static_cast<Eigen::Index>(dim_in()));
  for (const auto& k : operators) sum += k.adjoint() * k;
  return max_abs_diff(sum, identity(dim_in()));
}

PauliBasis PauliBasis::for_qubits(std::size_t num_qubits) {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  PauliBasis basis;
  basis.labels = {""};
  basis.operators = {identity(1)};
  for (std::size_t q = 0; q < num_qubits; ++q) {
    PauliBasis next;
    for (std::size_t i = 0; i < basis.labels.size(); ++i) {
      for (std::size_t p = 0; p < 4; ++p) {
        next.labels.push_back(basis.labels[i] + kNames[p]);
        next.operators.push_back(kron(basis.operators[i], single_paulis()[p]));
      }
    }
    basis = std::move(next);
  }
  return basis;
}

std::size_t PauliBasis::dim() const {
  if (operators.empty()) throw ChannelError("PauliBasis: empty");
  return static_cast<std::size_t>(operators.front().rows());
}

double PauliBasis::orthogonality_deviation() const {
  const double d = static_cast<double>(dim());
  double dev = 0.0;
  for (std::size_t m = 0; m < operators.size(); ++m) {
    for (std::size_t n = 0; n < operators.size(); ++n) {
      const Complex ip = (operators[m].adjoint() * operators[n]).trace();
      dev = std::max(dev, std::abs(ip - (m == n ? d : 0.0)));
    }
  }
  return dev;
}

ChoiMatrix choi_from_unitary(const ComplexMatrix& u) {
  if (!is_unitary(u, kUnitaryTol)) {
    throw ChannelError("choi_from_unitary: input is not unitary within 1e-9");
  }
  return kraus_to_choi(KrausSet{{u}});
}

ChoiMatrix kraus_to_choi(const KrausSet& k) {
  const std::size_t d_in = k.dim_in(), d_out = k.dim_out();
  const auto n = static_cast<Eigen::Index>(d_in * d_out);
  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  for (const auto& op : k.operators) {
    if (static_cast<std::size_t>(op.cols()) != d_in ||
        static_cast<std::size_t>(op.rows()) != d_out) {
      throw DimensionError("kraus_to_choi: inconsistent operator shapes");
    }
    const ComplexVector v = col_vec(op);
    c += v * v.adjoint();
  }
  return ChoiMatrix(d_in, d_out, std::move(c));
}

KrausSet choi_to_kraus(const ChoiMatrix& c) {
  const HermitianEigen e = eig_hermitian(c.matrix);
  if (!e.values.empty() && e.values.back() < -kKrausNegTol) {
    throw ChannelError("choi_to_kraus: Choi matrix is not positive (min eigenvalue " +
                       std::to_string(e.values.back()) + ")");
  }
  KrausSet out;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    if (e.values[i] <= kKrausDropTol) break;
    const ComplexVector v = e.vectors.col(static_cast<Eigen::Index>(i)) *
                            std::sqrt(e.values[i]);
    out.operators.push_back(unvec_rect(v, c.dim_out, c.dim_in));
  }
  if (out.operators.empty()) {
    out.operators.push_back(ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dim_out),
                                                static_cast<Eigen::Index>(c.dim_in)));
  }
  return out;
}

ComplexMatrix apply_choi(const ChoiMatrix& c, const ComplexMatrix& rho) {
  if (rho.rows() != static_cast<Eigen::Index>(c.dim_in) || rho.cols() != rho.rows()) {
    throw DimensionError("apply_choi: state dimension does not match channel input");
  }
  const ComplexMatrix lhs = kron(rho.transpose(), identity(c.dim_out));
  return partial_trace(lhs * c.matrix, c.dim_in, c.dim_out, Subsystem::B);
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho) {
  if (rho.rows() != static_cast<Eigen::Index>(k.dim_in()) || rho.cols() != rho.rows()) {
    throw DimensionError("apply_kraus: state dimension does not match channel input");
  }
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(k.dim_out()),
                                          static_cast<Eigen::Index>(k.dim_out()));
  for (const auto& op : k.operators) out += op * rho * op.adjoint();
  return out;
}

double outcome_probability(const ChoiMatrix& c, const ComplexMatrix& prep,
                           const ComplexMatrix& projector) {
  const auto di = static_cast<Eigen::Index>(c.dim_in);
  const auto dout = static_cast<Eigen::Index>(c.dim_out);
  if (prep.rows() != di || prep.cols() != di || projector.rows() != dout ||
      projector.cols() != dout) {
    throw DimensionError("outcome_probability: operand dimensions do not match channel");
  }
  // Tr[(A (x) B) C] = sum A(k,m) B(j,l) C(m*dout + l, k*dout + j), A = prep^T.
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < di; ++k) {
    for (Eigen::Index m = 0; m < di; ++m) {
      const Complex a = prep(m, k);
      if (a == Complex(0.0)) continue;
      for (Eigen::Index j = 0; j < dout; ++j) {
        for (Eigen::Index l = 0; l < dout; ++l) {
          sum += a * projector(j, l) * c.matrix(m * dout + l, k * dout + j);
        }
      }
    }
  }
  return sum.real();
}

ChiMatrix choi_to_chi(const ChoiMatrix& c, const PauliBasis& basis) {
  const std::size_t d = c.dim_in;
  if (c.dim_out != d || basis.operators.size() != d * d || basis.dim() != d) {
    throw DimensionError("choi_to_chi: basis does not match channel dimension");
  }
  if (basis.orthogonality_deviation() > 1e-9) {
    throw ChannelError("choi_to_chi: operator basis is not orthogonal");
  }
  const auto n = static_cast<Eigen::Index>(d * d);
  ComplexMatrix b(n, n);  // column m = vec(W_m)
  for (Eigen::Index m = 0; m < n; ++m) {
    b.col(m) = col_vec(basis.operators[static_cast<std::size_t>(m)]);
  }
  const double scale = 1.0 / static_cast<double>(d * d);
  return ChiMatrix{b.adjoint() * c.matrix * b * scale, basis};
}

ChoiMatrix chi_to_choi(const ChiMatrix& chi) {
  const std::size_t d = chi.basis.dim();
  const auto n = static_cast<Eigen::Index>(d * d);
  if (chi.matrix.rows() != n || chi.matrix.cols() != n) {
    throw DimensionError("chi_to_choi: chi matrix does not match basis");
  }
  ComplexMatrix b(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    b.col(m) = col_vec(chi.basis.operators[static_cast<std::size_t>(m)]);
  }
  return ChoiMatrix(d, d, b * chi.matrix * b.adjoint());
}

ComplexMatrix apply_chi(const ChiMatrix& chi, const ComplexMatrix& rho) {
  const auto& w = chi.basis.operators;
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t m = 0; m < w.size(); ++m) {
    for (std::size_t n = 0; n < w.size(); ++n) {
      const Complex x = chi.matrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
      if (x == Complex(0.0)) continue;
      out += x * w[m] * rho * w[n].adjoint();
    }
  }
  return out;
}

PTMatrix choi_to_ptm(const ChoiMatrix& c) {
  const std::size_t d = c.dim_in;
  std::size_t k = 0;
  while ((std::size_t{1} << k) < d) ++k;
  if ((std::size_t{1} << k) != d || c.dim_out != d) {
    throw DimensionError("choi_to_ptm: requires a square multi-qubit channel");
  }
  PTMatrix out{RealMatrix::Zero(static_cast<Eigen::Index>(d * d),
                                static_cast<Eigen::Index>(d * d)),
               PauliBasis::for_qubits(k)};
  const auto& w = out.basis.operators;
  for (std::size_t n = 0; n < w.size(); ++n) {
    const ComplexMatrix image = apply_choi(c, w[n]);
    for (std::size_t m = 0; m < w.size(); ++m) {
      out.matrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
          (w[m] * image).trace().real() / static_cast<double>(d);
    }
  }
  return out;
}

CptpReport is_cptp(const ChoiMatrix& c, double tol) {
  CptpReport r;
  r.hermitian_dev = hermitian_deviation(c.matrix);
  r.min_eig = eig_hermitian(c.matrix).values.back();
  const ComplexMatrix tr_out = partial_trace(c.matrix, c.dim_in, c.dim_out, Subsystem::A);
  r.tp_dev = (tr_out - identity(c.dim_in)).norm();
  r.passes = r.hermitian_dev <= tol && r.min_eig >= -tol && r.tp_dev <= tol;
  return r;
}

KrausSet compose(const KrausSet& second, const KrausSet& first) {
  if (second.dim_in() != first.dim_out()) {
    throw DimensionError("compose: channel dimensions do not chain");
  }
  KrausSet out;
  out.operators.reserve(second.operators.size() * first.operators.size());
  for (const auto& b : second.operators) {
    for (const auto& a : first.operators) out.operators.push_back(b * a);
  }
  return out;
}

KrausSet tensor(const KrausSet& a, const KrausSet& b) {
  KrausSet out;
  out.operators.reserve(a.operators.size() * b.operators.size());
  for (const auto& x : a.operators) {
    for (const auto& y : b.operators) out.operators.push_back(kron(x, y));
  }
  return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m, std::size_t dim) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return nlohmann::json{{"dim", dim}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  const auto im = j.at("im").get<std::vector<std::vector<double>>>();
  if (re.size() != im.size()) throw DimensionError("matrix_from_json: re/im row mismatch");
  std::vector<std::vector<Complex>> rows(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (re[i].size() != im[i].size()) {
      throw DimensionError("matrix_from_json: re/im column mismatch");
    }
    for (std::size_t k = 0; k < re[i].size(); ++k) rows[i].emplace_back(re[i][k], im[i][k]);
  }
  return from_rows(rows);
}

nlohmann::json to_json(const ChoiMatrix& c) {
  return matrix_to_json(c.matrix, c.dim_in);
}

nlohmann::json to_json(const ChiMatrix& chi) {
  nlohmann::json j = matrix_to_json(chi.matrix, chi.basis.dim());
  j["basis"] = chi.basis.labels;
  return j;
}

nlohmann::json to_json(const PTMatrix& ptm) {
  nlohmann::json j = matrix_to_json(ptm.matrix.cast<Complex>(), ptm.basis.dim());
  j["basis"] = ptm.basis.labels;
  return j;
}

ChoiMatrix choi_from_json(const nlohmann::json& j) {
  ComplexMatrix m = matrix_from_json(j);
  const auto d = j.at("dim").get<std::size_t>();
  return ChoiMatrix(d, d, std::move(m));
}

std::string matrix_to_csv(const RealMatrix& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace choiqpt
