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

// Dense operator algebra for registers of a few qubits: validated Hermitian
// and unitary wrappers, spectral frames with degeneracy clustering,
// exponentials, fidelities and operator-Schmidt factorization.
//
// Qubit 1 is the leftmost tensor factor throughout the library.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "hqc/errors.hpp"

namespace hqc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

/// max-norm distance of U^dagger U from the identity.
inline double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - identity(u.cols()));
}

/// Unitary polar factor of a square matrix: the closest unitary in any
/// unitarily invariant norm. Unique when `m` is nonsingular.
inline Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

class HermitianOperator {
 public:
  /// Symmetrizes small rounding asymmetry; rejects anything larger.
  explicit HermitianOperator(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw DimensionMismatch("Hermitian operator needs a non-empty square matrix");
    }
    const double asym = max_abs(m - m.adjoint());
    if (asym > 1e-9 * std::max(1.0, max_abs(m))) {
      std::ostringstream os;
      os << "matrix is not Hermitian (max |M - M^dagger| = " << asym << ")";
      throw NotHermitian(os.str());
    }
    matrix_ = 0.5 * (m + m.adjoint());
  }

  static HermitianOperator zero(Index dim) { return HermitianOperator(Matrix::Zero(dim, dim)); }

  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

  /// Spectral norm, i.e. the largest |eigenvalue|.
  double norm() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

  HermitianOperator operator+(const HermitianOperator& o) const {
    check_same_dim(o);
    return HermitianOperator(matrix_ + o.matrix_);
  }
  HermitianOperator operator-(const HermitianOperator& o) const {
    check_same_dim(o);
    return HermitianOperator(matrix_ - o.matrix_);
  }
  HermitianOperator operator-() const { return HermitianOperator(-matrix_); }
  friend HermitianOperator operator*(double s, const HermitianOperator& h) {
    return HermitianOperator(s * h.matrix_);
  }

 private:
  void check_same_dim(const HermitianOperator& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("Hermitian operands differ in dimension");
  }

  Matrix matrix_;
};

inline double max_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  return max_abs(a.matrix() - b.matrix());
}

class UnitaryOperator {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit UnitaryOperator(Matrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
      throw DimensionMismatch("unitary operator needs a non-empty square matrix");
    }
    const double defect = unitarity_defect(matrix_);
    if (!(defect <= kTolerance)) {
      std::ostringstream os;
      os << "matrix is not unitary (max |U^dagger U - I| = " << defect << ")";
      throw NotUnitary(os.str());
    }
  }

  static UnitaryOperator identity(Index dim) { return UnitaryOperator(Matrix::Identity(dim, dim)); }
  /// Polar factor of an approximately unitary matrix.
  static UnitaryOperator closest(const Matrix& m) { return UnitaryOperator(polar_unitary(m)); }

  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  UnitaryOperator adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

  UnitaryOperator operator*(const UnitaryOperator& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("unitary operands differ in dimension");
    return UnitaryOperator(matrix_ * o.matrix_);
  }

 private:
  Matrix matrix_;
};

inline UnitaryOperator kron(const UnitaryOperator& a, const UnitaryOperator& b) {
  return UnitaryOperator(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Pauli strings

namespace pauli {
inline Matrix I() { return Matrix::Identity(2, 2); }
inline Matrix X() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix Y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}
inline Matrix Z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

/// scale * (factor_1 (x) factor_2 (x) ... (x) factor_n), identity on qubits
/// absent from `factors`. Qubit indices are 1-based.
inline HermitianOperator pauli_string(int n_qubits, const std::map<int, Matrix>& factors,
                                      double scale = 1.0) {
  if (n_qubits < 1) throw InvalidArgument("pauli_string: need at least one qubit");
  for (const auto& [q, f] : factors) {
    if (q < 1 || q > n_qubits) {
      std::ostringstream os;
      os << "pauli_string: qubit index " << q << " outside [1, " << n_qubits << "]";
      throw InvalidArgument(os.str());
    }
    if (f.rows() != 2 || f.cols() != 2) throw DimensionMismatch("pauli_string: factors must be 2x2");
    if (max_abs(f - f.adjoint()) > 1e-12) {
      std::ostringstream os;
      os << "pauli_string: factor on qubit " << q << " is not Hermitian";
      throw NotHermitian(os.str());
    }
  }
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 1; q <= n_qubits; ++q) {
    auto it = factors.find(q);
    out = kron(out, it == factors.end() ? pauli::I() : it->second);
  }
  return HermitianOperator(scale * out);
}

// ---------------------------------------------------------------------------
// Spectral frames

/// One eigenvalue cluster: mean energy and an orthonormal basis (dim x d).
struct SpectralLevel {
  double energy = 0.0;
  Matrix basis;

  Index degeneracy() const { return basis.cols(); }
  Matrix projector() const { return basis * basis.adjoint(); }
};

class SpectralFrame {
 public:
  SpectralFrame(std::vector<SpectralLevel> levels, Index dim, double source_norm)
      : levels_(std::move(levels)), dim_(dim), source_norm_(source_norm) {}

  const std::vector<SpectralLevel>& levels() const { return levels_; }
  const SpectralLevel& level(std::size_t n) const { return levels_.at(n); }
  std::size_t size() const { return levels_.size(); }
  Index dim() const { return dim_; }
  double source_norm() const { return source_norm_; }

  /// sum_n energy_n * Pi_n.
  Matrix reconstruct() const {
    Matrix h = Matrix::Zero(dim_, dim_);
    for (const auto& l : levels_) h += l.energy * l.projector();
    return h;
  }

  /// Smallest distance between adjacent levels; 0 for a single level.
  double min_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n < levels_.size(); ++n) {
      gap = std::min(gap, levels_[n].energy - levels_[n - 1].energy);
    }
    return levels_.size() < 2 ? 0.0 : gap;
  }

 private:
  std::vector<SpectralLevel> levels_;
  Index dim_;
  double source_norm_;
};

inline constexpr double kDefaultClusterTol = 1e-8;

/// Eigendecomposition with relative degeneracy clustering. Raw eigenvalues
/// whose gap is below cluster_tol*|H|/2 merge into one level; gaps above
/// 2*cluster_tol*|H| separate levels; anything in between is ambiguous.
inline SpectralFrame spectral_decompose(const HermitianOperator& h,
                                        double cluster_tol = kDefaultClusterTol) {
  if (!(cluster_tol > 0.0)) throw InvalidArgument("spectral_decompose: cluster_tol must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw Error("spectral_decompose: eigensolver failed");
  const RealVector& w = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  const Index n = w.size();
  const double norm = std::max(std::abs(w(0)), std::abs(w(n - 1)));
  const double threshold = cluster_tol * norm;

  std::vector<SpectralLevel> levels;
  Index begin = 0;
  auto flush = [&](Index end) {
    SpectralLevel l;
    l.energy = w.segment(begin, end - begin).mean();
    l.basis = v.middleCols(begin, end - begin);
    levels.push_back(std::move(l));
    begin = end;
  };
  for (Index i = 1; i < n; ++i) {
    const double gap = w(i) - w(i - 1);
    if (norm == 0.0 || gap < 0.5 * threshold) continue;
    if (gap <= 2.0 * threshold) {
      std::ostringstream os;
      os << "spectral_decompose: gap " << gap << " between eigenvalues " << i - 1 << " and " << i
         << " is within a factor 2 of the clustering threshold " << threshold;
      throw ClusteringAmbiguity(os.str(), gap, threshold);
    }
    flush(i);
  }
  flush(n);
  return SpectralFrame(std::move(levels), n, norm);
}

// ---------------------------------------------------------------------------
// Exponentials and fidelities

/// exp(-i H dt) through the eigendecomposition of H.
inline Matrix propagator_matrix(const Matrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix& v = es.eigenvectors();
  Vector phases = (-kI * dt * es.eigenvalues().cast<cplx>()).array().exp();
  return v * phases.asDiagonal() * v.adjoint();
}

inline UnitaryOperator propagator_step(const HermitianOperator& h, double dt) {
  if (!std::isfinite(dt)) throw InvalidArgument("propagator_step: dt must be finite");
  return UnitaryOperator(propagator_matrix(h.matrix(), dt));
}

/// |tr(A^dagger B)| / N for arbitrary square matrices of equal size.
inline double trace_overlap(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionMismatch("trace_overlap: operands must be square and of equal size");
  }
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

/// Global-phase invariant gate fidelity |tr(U^dagger V)| / N.
inline double gate_fidelity(const UnitaryOperator& u, const UnitaryOperator& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("gate_fidelity: dimension mismatch");
  return std::min(1.0, trace_overlap(u.matrix(), v.matrix()));
}

/// min over phi of max|A - e^{i phi} B|, with phi taken from tr(B^dagger A).
inline double phase_aligned_distance(const Matrix& a, const Matrix& b) {
  const cplx t = (b.adjoint() * a).trace();
  const cplx phase = std::abs(t) > 0 ? t / std::abs(t) : cplx(1.0);
  return max_abs(a - phase * b);
}

// ---------------------------------------------------------------------------
// Operator-Schmidt factorization

/// Realignment R[(iA,jA),(iB,jB)] = U[(iA,iB),(jA,jB)] of an operator on A(x)B.
inline Matrix realign(const Matrix& u, Index d_a, Index d_b) {
  Matrix r(d_a * d_a, d_b * d_b);
  for (Index ia = 0; ia < d_a; ++ia)
    for (Index ja = 0; ja < d_a; ++ja)
      for (Index ib = 0; ib < d_b; ++ib)
        for (Index jb = 0; jb < d_b; ++jb) r(ia * d_a + ja, ib * d_b + jb) = u(ia * d_b + ib, ja * d_b + jb);
  return r;
}

/// Tr_B of an operator on A(x)B.
inline Matrix partial_trace_b(const Matrix& m, Index d_a, Index d_b) {
  Matrix out = Matrix::Zero(d_a, d_a);
  for (Index ia = 0; ia < d_a; ++ia)
    for (Index ja = 0; ja < d_a; ++ja)
      for (Index b = 0; b < d_b; ++b) out(ia, ja) += m(ia * d_b + b, ja * d_b + b);
  return out;
}

struct FactorizationReport {
  Index d_a = 0;
  Index d_b = 0;
  /// Non-increasing; their squares sum to N = d_a * d_b for a unitary input.
  RealVector schmidt_coefficients;
  /// Polar-unitarized leading Schmidt factors. Always filled; they represent
  /// the input only when `is_product` holds.
  Matrix factor_a;
  Matrix factor_b;
  /// Phase aligning e^{i phase} factor_a (x) factor_b with the input.
  double phase = 0.0;
  /// sqrt(1 - sigma_1^2 / N), in [0, 1].
  double residual = 1.0;

  bool is_product(double tol = 1e-6) const { return residual <= tol; }

  /// Number of Schmidt coefficients above tol * sqrt(N).
  Index schmidt_rank(double tol = 1e-8) const {
    const double scale = std::sqrt(static_cast<double>(d_a * d_b));
    return (schmidt_coefficients.array() > tol * scale).count();
  }

  Matrix product() const { return std::polar(1.0, phase) * kron(factor_a, factor_b); }
};

inline FactorizationReport product_factorize(const UnitaryOperator& u, Index d_a, Index d_b) {
  if (d_a < 1 || d_b < 1 || d_a * d_b != u.dim()) {
    std::ostringstream os;
    os << "product_factorize: dims " << d_a << "x" << d_b << " do not match operator dimension "
       << u.dim();
    throw DimensionMismatch(os.str());
  }
  const Matrix r = realign(u.matrix(), d_a, d_b);
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);

  FactorizationReport rep;
  rep.d_a = d_a;
  rep.d_b = d_b;
  rep.schmidt_coefficients = svd.singularValues();
  // 1 - sigma_1^2/N summed from the tail, since sum sigma_k^2 = N for a unitary.
  const RealVector& sigma = rep.schmidt_coefficients;
  const double tail = sigma.tail(sigma.size() - 1).squaredNorm();
  rep.residual = std::sqrt(std::clamp(tail / sigma.squaredNorm(), 0.0, 1.0));

  Matrix a(d_a, d_a), b(d_b, d_b);
  for (Index i = 0; i < d_a; ++i)
    for (Index j = 0; j < d_a; ++j) a(i, j) = svd.matrixU()(i * d_a + j, 0);
  for (Index i = 0; i < d_b; ++i)
    for (Index j = 0; j < d_b; ++j) b(i, j) = std::conj(svd.matrixV()(i * d_b + j, 0));
  rep.factor_a = polar_unitary(a);
  rep.factor_b = polar_unitary(b);
  const cplx t = (kron(rep.factor_a, rep.factor_b).adjoint() * u.matrix()).trace();
  rep.phase = std::arg(t);
  return rep;
}

// ---------------------------------------------------------------------------

/// Unitary that maps basis column j to column j+1 (cyclically) and acts as
/// the identity on the orthogonal complement of their span.
inline UnitaryOperator cyclic_permutation(const Matrix& basis) {
  const Index k = basis.cols();
  if (k < 1) throw InvalidArgument("cyclic_permutation: need at least one vector");
  if (max_abs(basis.adjoint() * basis - identity(k)) > 1e-10) {
    throw InvalidArgument("cyclic_permutation: vectors are not orthonormal");
  }
  Matrix c = identity(basis.rows()) - basis * basis.adjoint();
  for (Index j = 0; j < k; ++j) c += basis.col((j + 1) % k) * basis.col(j).adjoint();
  return UnitaryOperator(c);
}

}  // namespace hqc
