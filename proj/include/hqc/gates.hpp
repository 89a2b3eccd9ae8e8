// Copyright 2026 The hqc Authors
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

// Standard gates and small helpers on unitary matrices.

#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numbers>
#include <vector>

#include "hqc/operator.hpp"

namespace hqc::gates {

inline Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

/// pi/8 gate diag(1, e^{i pi/4}).
inline Matrix t() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  return m;
}

/// Phase gate S = T^2 = diag(1, i).
inline Matrix s() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = kI;
  return m;
}

/// Embeds a single-qubit gate at 1-based position `qubit` of an n-qubit register.
inline Matrix on_qubit(const Matrix& gate, int qubit, int n_qubits) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 1; q <= n_qubits; ++q) out = kron(out, q == qubit ? gate : pauli::I());
  return out;
}

/// Controlled-NOT on an n-qubit register.
inline Matrix cnot(int control, int target, int n_qubits) {
  const Matrix p0 = 0.5 * (pauli::I() + pauli::Z());
  const Matrix p1 = 0.5 * (pauli::I() - pauli::Z());
  return on_qubit(p0, control, n_qubits) +
         on_qubit(p1, control, n_qubits) * on_qubit(pauli::X(), target, n_qubits);
}

}  // namespace hqc::gates

namespace hqc {

/// Eigen-decomposition of a unitary (normal) matrix through its complex Schur
/// form. Columns are orthonormal eigenvectors ordered by eigenphase in
/// (-pi, pi]; ties are broken by the index of the first significant
/// component, and each vector's first significant component is made real
/// positive.
struct UnitaryEigensystem {
  RealVector phases;
  Matrix vectors;
};

inline UnitaryEigensystem unitary_eigensystem(const Matrix& u) {
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& tri = schur.matrixT();
  const Matrix& q = schur.matrixU();
  const Index n = u.rows();
  auto first_significant = [&](Index j) {
    for (Index i = 0; i < n; ++i)
      if (std::abs(q(i, j)) > 1e-8) return i;
    return n;
  };
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) order[j] = j;
  RealVector raw(n);
  for (Index j = 0; j < n; ++j) {
    double a = std::arg(tri(j, j));
    if (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
    raw(j) = a;
  }
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (std::abs(raw(a) - raw(b)) > 1e-9) return raw(a) < raw(b);
    return first_significant(a) < first_significant(b);
  });
  UnitaryEigensystem es{RealVector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index j = order[k];
    es.phases(k) = raw(j);
    Vector v = q.col(j);
    const Index i = first_significant(j);
    if (i < n) v *= std::conj(v(i)) / std::abs(v(i));
    es.vectors.col(k) = v;
  }
  return es;
}

/// Principal k-th root: eigenphases in (-pi, pi] divided by k.
inline Matrix principal_root(const Matrix& u, int k) {
  if (k < 1) throw InvalidArgument("principal_root: k must be positive");
  const auto es = unitary_eigensystem(u);
  Vector d(es.phases.size());
  for (Index j = 0; j < d.size(); ++j) d(j) = std::polar(1.0, es.phases(j) / k);
  return es.vectors * d.asDiagonal() * es.vectors.adjoint();
}

inline Matrix matrix_power(const Matrix& m, int k) {
  Matrix out = identity(m.rows());
  for (int j = 0; j < k; ++j) out = m * out;
  return out;
}

}  // namespace hqc
