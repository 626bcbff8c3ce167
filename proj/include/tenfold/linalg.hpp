#pragma once

// Dense complex linear algebra shared by every other module.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "tenfold/error.hpp"

namespace tenfold {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerance regime. Every predicate takes its tolerance explicitly;
/// these are the defaults callers pass when they have no better value.
struct Tolerances {
  double input = 1e-8;
  double eig = 1e-10;
  double unitary_scale = 1e-12;
  double dedup = 1e-8;
  double cluster_gap = 1e-6;

  double unitary(Index n) const { return unitary_scale * std::sqrt(static_cast<double>(n)); }

  /// Defaults with `input` replaced by $TENFOLD_TOLERANCE when it parses as a
  /// finite non-negative number.
  static Tolerances from_env() {
    Tolerances tol;
    if (const char* env = std::getenv("TENFOLD_TOLERANCE")) {
      char* end = nullptr;
      const double value = std::strtod(env, &end);
      if (end != env && *end == '\0' && std::isfinite(value) && value >= 0.0) tol.input = value;
    }
    return tol;
  }
};

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

/// Standard symplectic form [[0, I], [-I, 0]] of even size n.
inline Matrix symplectic_form(Index n) {
  if (n % 2 != 0) fail(ErrorKind::InputShape, "symplectic form needs even size, got " + std::to_string(n));
  const Index h = n / 2;
  Matrix j = Matrix::Zero(n, n);
  j.topRightCorner(h, h) = identity(h);
  j.bottomLeftCorner(h, h) = -identity(h);
  return j;
}

/// diag(+1 x p, -1 x q).
inline Matrix grading(Index p, Index q) {
  Matrix s = Matrix::Zero(p + q, p + q);
  for (Index i = 0; i < p; ++i) s(i, i) = 1.0;
  for (Index i = p; i < p + q; ++i) s(i, i) = -1.0;
  return s;
}

namespace pauli {
inline Matrix x() { Matrix m(2, 2); m << 0.0, 1.0, 1.0, 0.0; return m; }
inline Matrix y() { Matrix m(2, 2); m << 0.0, -kI, kI, 0.0; return m; }
inline Matrix z() { Matrix m(2, 2); m << 1.0, 0.0, 0.0, -1.0; return m; }
}  // namespace pauli

// Predicates. Deviations are Frobenius norms, scaled by max(1, |A|_F) where the
// property is homogeneous in A.

inline double scale_of(const Matrix& a) { return std::max(1.0, a.norm()); }

inline bool is_square(const Matrix& a) { return a.rows() == a.cols(); }

inline double hermitian_defect(const Matrix& a) { return (a - a.adjoint()).norm() / scale_of(a); }
inline double unitary_defect(const Matrix& u) { return (u.adjoint() * u - identity(u.cols())).norm(); }
inline double symmetric_defect(const Matrix& a) { return (a - a.transpose()).norm() / scale_of(a); }
inline double skew_defect(const Matrix& a) { return (a + a.transpose()).norm() / scale_of(a); }
inline double anti_hermitian_defect(const Matrix& a) { return (a + a.adjoint()).norm() / scale_of(a); }

inline bool is_hermitian(const Matrix& a, double tol) { return is_square(a) && hermitian_defect(a) <= tol; }
inline bool is_unitary(const Matrix& u, double tol) { return is_square(u) && unitary_defect(u) <= tol; }
inline bool is_symmetric(const Matrix& a, double tol) { return is_square(a) && symmetric_defect(a) <= tol; }
inline bool is_skew(const Matrix& a, double tol) { return is_square(a) && skew_defect(a) <= tol; }
inline bool is_anti_hermitian(const Matrix& a, double tol) {
  return is_square(a) && anti_hermitian_defect(a) <= tol;
}

struct HermitianEigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

inline HermitianEigenSystem eig_hermitian(const Matrix& h, double tol_input = Tolerances{}.input) {
  if (!is_square(h))
    fail(ErrorKind::InputShape, "eig_hermitian: matrix is " + std::to_string(h.rows()) + "x" +
                                    std::to_string(h.cols()));
  if (hermitian_defect(h) > tol_input)
    fail(ErrorKind::InputShape, "eig_hermitian: matrix not Hermitian (defect " +
                                    std::to_string(hermitian_defect(h)) + ")");
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector eigvals_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// exp(-i t H) for Hermitian H through its eigendecomposition.
inline Matrix evolution(const Matrix& h, double t = 1.0) {
  const auto sys = eig_hermitian(h);
  Vector phases(sys.values.size());
  for (Index i = 0; i < sys.values.size(); ++i) phases(i) = std::exp(-kI * t * sys.values(i));
  return sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
}

/// Orthonormal basis (as columns) of the right singular vectors with singular
/// value at most `threshold`.
inline Matrix nullspace_below(const Matrix& a, double threshold) {
  const Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return identity(n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > threshold) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

/// Orthonormal basis (as columns) of {v : |A v| <= tol |A|_F |v|}.
inline Matrix nullspace(const Matrix& a, double tol) { return nullspace_below(a, tol * a.norm()); }

inline RealMatrix real_nullspace(const RealMatrix& a, double tol) {
  const Index n = a.cols();
  if (n == 0) return RealMatrix(0, 0);
  if (a.rows() == 0) return RealMatrix::Identity(n, n);
  const double threshold = tol * a.norm();
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > threshold) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

/// Column-major vec and its inverse.
inline Vector vec(const Matrix& a) { return Eigen::Map<const Vector>(a.data(), a.size()); }
inline Matrix unvec(const Vector& v, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

/// Matrix of X -> A X - X B acting on vec(X), X of shape a.rows() x b.cols().
inline Matrix sylvester_operator(const Matrix& a, const Matrix& b) {
  return kron(identity(b.rows()), a) - kron(b.transpose(), identity(a.cols()));
}

// Real-linear solution spaces. A complex r x c matrix is coordinatized by
// 2rc reals (real parts then imaginary parts, column-major); the Frobenius
// real inner product Re tr(X^dag Y) is then the Euclidean one.

inline RealVector to_real(const Matrix& a) {
  RealVector out(2 * a.size());
  for (Index k = 0; k < a.size(); ++k) {
    out(k) = a.data()[k].real();
    out(a.size() + k) = a.data()[k].imag();
  }
  return out;
}

inline Matrix from_real(const RealVector& x, Index rows, Index cols) {
  Matrix out(rows, cols);
  const Index n = rows * cols;
  for (Index k = 0; k < n; ++k) out.data()[k] = Complex(x(k), x(n + k));
  return out;
}

using RealLinearMap = std::function<Matrix(const Matrix&)>;

/// Orthonormal (real Frobenius) basis of {X in C^{rows x cols} : f(X) = 0 for all f}.
/// Each f must be real-linear.
inline std::vector<Matrix> real_solution_space(Index rows, Index cols, const std::vector<RealLinearMap>& constraints,
                                               double tol = 1e-9) {
  const Index dim = 2 * rows * cols;
  Index total_rows = 0;
  std::vector<RealMatrix> blocks;
  for (const auto& f : constraints) {
    RealMatrix block;
    for (Index k = 0; k < dim; ++k) {
      RealVector e = RealVector::Zero(dim);
      e(k) = 1.0;
      const RealVector img = to_real(f(from_real(e, rows, cols)));
      if (k == 0) block.resize(img.size(), dim);
      block.col(k) = img;
    }
    total_rows += block.rows();
    blocks.push_back(std::move(block));
  }
  RealMatrix stacked(total_rows, dim);
  Index offset = 0;
  for (const auto& b : blocks) {
    stacked.middleRows(offset, b.rows()) = b;
    offset += b.rows();
  }
  const RealMatrix basis = real_nullspace(stacked, tol);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Index j = 0; j < basis.cols(); ++j) out.push_back(from_real(basis.col(j), rows, cols));
  return out;
}

/// Re tr(A^dag B).
inline double real_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace().real(); }

/// Real Gram-Schmidt of a list of matrices; drops directions below tol.
inline std::vector<Matrix> real_orthonormalize(const std::vector<Matrix>& in, double tol = 1e-12) {
  std::vector<Matrix> out;
  for (const auto& a : in) {
    Matrix v = a;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : out) v -= real_inner(b, v) * b;
    const double norm = v.norm();
    if (norm > tol * std::max(1.0, a.norm())) out.push_back(v / norm);
  }
  return out;
}

/// Norm of the component of x orthogonal to the real span of an orthonormal basis.
inline double real_residual(const std::vector<Matrix>& orthonormal, const Matrix& x) {
  Matrix r = x;
  for (const auto& b : orthonormal) r -= real_inner(b, r) * b;
  return r.norm();
}

}  // namespace tenfold
