#pragma once

// Brute-force fermionic Fock space: CAR operators, particle-hole conjugation,
// quadratic Hamiltonians and the Spin -> SO covering.

#include <Eigen/Sparse>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "tenfold/antiunitary.hpp"
#include "tenfold/classifier.hpp"
#include "tenfold/linalg.hpp"

namespace tenfold {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Basis state b is the bitstring with bit k = occupation of mode k; it stands
/// for e_k1 ^ ... ^ e_kn with k1 < ... < kn.
struct FockSpace {
  Index N = 0;
  Index dim = 0;
  std::vector<SparseMatrix> create;
  std::vector<SparseMatrix> annihilate;
  Index omega = 0;  // all-ones bitstring

  static int level(Index b) { return std::popcount(static_cast<std::uint64_t>(b)); }

  /// Orthogonal projector onto the n-particle subspace (diagonal).
  Matrix level_projector(int n) const {
    Matrix p = Matrix::Zero(dim, dim);
    for (Index b = 0; b < dim; ++b)
      if (level(b) == n) p(b, b) = 1.0;
    return p;
  }

  Vector vacuum() const {
    Vector v = Vector::Zero(dim);
    v(0) = 1.0;
    return v;
  }
};

inline FockSpace build_fock(Index n) {
  if (n < 1 || n > 14) fail(ErrorKind::InputShape, "build_fock: N must be in 1..14");
  FockSpace f;
  f.N = n;
  f.dim = Index{1} << n;
  f.omega = f.dim - 1;
  for (Index k = 0; k < n; ++k) {
    std::vector<Eigen::Triplet<Complex>> t;
    for (Index b = 0; b < f.dim; ++b) {
      if (b & (Index{1} << k)) continue;
      const int below = FockSpace::level(b & ((Index{1} << k) - 1));
      t.emplace_back(b | (Index{1} << k), b, below % 2 ? -1.0 : 1.0);
    }
    SparseMatrix c(f.dim, f.dim);
    c.setFromTriplets(t.begin(), t.end());
    f.annihilate.push_back(SparseMatrix(c.adjoint()));
    f.create.push_back(std::move(c));
  }
  return f;
}

/// Sign of e_b ^ e_c relative to e_(b|c) (0 when they overlap).
inline int wedge_sign(Index b, Index c) {
  if (b & c) return 0;
  int inversions = 0;
  for (Index x = b; x; x &= x - 1) {
    const Index k = std::countr_zero(static_cast<std::uint64_t>(x));
    inversions += FockSpace::level(c & ((Index{1} << k) - 1));
  }
  return inversions % 2 ? -1 : 1;
}

inline Vector wedge(const FockSpace& f, const Vector& x, const Vector& y) {
  Vector out = Vector::Zero(f.dim);
  for (Index b = 0; b < f.dim; ++b) {
    if (x(b) == 0.0) continue;
    for (Index c = 0; c < f.dim; ++c) {
      const int s = wedge_sign(b, c);
      if (s != 0) out(b | c) += static_cast<double>(s) * x(b) * y(c);
    }
  }
  return out;
}

/// a^dag(v) = sum_k v_k a^dag_k
inline SparseMatrix creation(const FockSpace& f, const Vector& v) {
  SparseMatrix c(f.dim, f.dim);
  for (Index k = 0; k < f.N; ++k) c += v(k) * f.create[static_cast<std::size_t>(k)];
  return c;
}

/// v1 ^ ... ^ vn as a Fock vector.
inline Vector wedge_vectors(const FockSpace& f, const std::vector<Vector>& vs) {
  Vector psi = f.vacuum();
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) psi = creation(f, *it) * psi;
  return psi;
}

/// Second-quantized g: the exterior powers of g on each level, by minors.
inline Matrix lift_unitary(const FockSpace& f, const Matrix& g) {
  if (g.rows() != f.N || g.cols() != f.N) fail(ErrorKind::InputShape, "lift_unitary: wrong shape");
  Matrix out = Matrix::Zero(f.dim, f.dim);
  std::vector<std::vector<Index>> modes(static_cast<std::size_t>(f.dim));
  for (Index b = 0; b < f.dim; ++b)
    for (Index k = 0; k < f.N; ++k)
      if (b & (Index{1} << k)) modes[static_cast<std::size_t>(b)].push_back(k);
  out(0, 0) = 1.0;
  for (Index b = 1; b < f.dim; ++b)
    for (Index c = 1; c < f.dim; ++c) {
      const auto& rows = modes[static_cast<std::size_t>(c)];
      const auto& cols = modes[static_cast<std::size_t>(b)];
      if (rows.size() != cols.size()) continue;
      const auto n = static_cast<Index>(rows.size());
      Matrix minor(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) minor(i, j) = g(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      out(c, b) = minor.determinant();
    }
  return out;
}

/// C with (C psi) ^ psi' = <psi, psi'> Omega on each level: C|b> = s_b |~b>,
/// s_b the sign of e_~b ^ e_b.
inline AntiUnitaryOp particle_hole(const FockSpace& f) {
  Matrix u = Matrix::Zero(f.dim, f.dim);
  for (Index b = 0; b < f.dim; ++b) {
    const Index comp = f.omega ^ b;
    u(comp, b) = static_cast<double>(wedge_sign(comp, b));
  }
  return {u};
}

/// Twisted particle-hole conjugation: the lift of S composed with C.
inline AntiUnitaryOp twisted_particle_hole(const FockSpace& f, const Matrix& s) {
  return {lift_unitary(f, s) * particle_hole(f).u};
}

/// sum W_kl a^dag_k a_l + 1/2 sum (Z_kl a^dag_k a^dag_l + conj(Z_kl) a_l a_k)
inline Matrix lift_one_body(const FockSpace& f, const Matrix& w, const Matrix& z, double tol = Tolerances{}.input) {
  const Index n = f.N;
  if (w.rows() != n || w.cols() != n || z.rows() != n || z.cols() != n)
    fail(ErrorKind::InputShape, "lift_one_body: W and Z must be N x N");
  if (!is_hermitian(w, tol)) fail(ErrorKind::InputShape, "lift_one_body: W is not Hermitian");
  if (!is_skew(z, tol)) fail(ErrorKind::InputShape, "lift_one_body: Z is not skew-symmetric");
  SparseMatrix h(f.dim, f.dim);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) {
      const auto& ck = f.create[static_cast<std::size_t>(k)];
      const auto& cl = f.create[static_cast<std::size_t>(l)];
      const auto& al = f.annihilate[static_cast<std::size_t>(l)];
      const auto& ak = f.annihilate[static_cast<std::size_t>(k)];
      if (w(k, l) != 0.0) h += w(k, l) * (ck * al);
      if (z(k, l) != 0.0) {
        h += (0.5 * z(k, l)) * (ck * cl);
        h += (0.5 * std::conj(z(k, l))) * (al * ak);
      }
    }
  return Matrix(h);
}

/// [[W, Z], [Z^dag, -W^t]], with H = 1/2 Psi^dag G Psi + Tr W / 2 for Psi = (a, a^dag).
inline Matrix nambu_generator(const Matrix& w, const Matrix& z) {
  const Index n = w.rows();
  Matrix g(2 * n, 2 * n);
  g << w, z, z.adjoint(), -w.transpose();
  return g;
}

/// Majorana operators c_2k = a_k + a^dag_k, c_2k+1 = i a_k - i a^dag_k.
inline std::vector<SparseMatrix> majorana_operators(const FockSpace& f) {
  std::vector<SparseMatrix> c;
  for (Index k = 0; k < f.N; ++k) {
    const auto& a = f.annihilate[static_cast<std::size_t>(k)];
    const auto& ad = f.create[static_cast<std::size_t>(k)];
    c.push_back(a + ad);
    c.push_back(kI * a - kI * ad);
  }
  return c;
}

/// Real generator K in the Majorana basis: U c_i U^-1 = sum_j exp(K)_ji c_j for
/// U = exp(-i H t).
inline RealMatrix majorana_generator(const Matrix& w, const Matrix& z, double t = 1.0) {
  const Matrix lambda = majorana_map(w.rows());
  return (-kI * t * (lambda * nambu_generator(w, z) * lambda.adjoint())).real();
}

struct CoveringResult {
  RealMatrix M;
  double orthogonality = 0.0;  // |M^t M - 1|
  double det = 0.0;
  double generator_residual = 0.0;  // |M - exp(K)|
  double span_residual = 0.0;       // worst |U c_i U^-1 - sum_j M_ji c_j| / |c_i|
  bool kernel_exact = false;        // tau(U) == tau(-U) bit for bit
};

/// M_ji = tr(c_j U c_i U^-1) / 2^N.
inline RealMatrix covering_matrix(const FockSpace& f, const Matrix& u, double* span_residual = nullptr) {
  const auto c = majorana_operators(f);
  const Index m = 2 * f.N;
  RealMatrix out(m, m);
  double worst = 0.0, worst_imag = 0.0;
  for (Index i = 0; i < m; ++i) {
    const Matrix conj = u * (c[static_cast<std::size_t>(i)] * u.adjoint());
    Matrix rest = conj;
    for (Index j = 0; j < m; ++j) {
      const Complex x = (c[static_cast<std::size_t>(j)] * conj).trace() / static_cast<double>(f.dim);
      worst_imag = std::max(worst_imag, std::abs(x.imag()));
      out(j, i) = x.real();
      rest -= x * Matrix(c[static_cast<std::size_t>(j)]);
    }
    worst = std::max(worst, rest.norm() / std::sqrt(static_cast<double>(f.dim)));
  }
  if (span_residual) *span_residual = std::max(worst, worst_imag);
  return out;
}

inline CoveringResult covering_check(const FockSpace& f, const Matrix& h_fock, const Matrix& w, const Matrix& z,
                                     double t = 1.0, double tol = 1e-9) {
  const Matrix u = evolution(h_fock, t);
  CoveringResult r;
  r.M = covering_matrix(f, u, &r.span_residual);
  if (r.span_residual > tol) fail(ErrorKind::NotQuadratic, "conjugated Majorana operator leaves the Majorana span");
  const Index m = 2 * f.N;
  r.orthogonality = (r.M.transpose() * r.M - RealMatrix::Identity(m, m)).norm();
  r.det = r.M.determinant();
  const RealMatrix k = majorana_generator(w, z, t);
  r.generator_residual = (r.M - evolution(kI * k.cast<Complex>(), 1.0).real()).norm();  // exp(K)
  const Matrix minus = -u;
  r.kernel_exact = covering_matrix(f, minus) == r.M;
  return r;
}

struct TransferRecord {
  bool pass = true;
  double worst = 0.0;
  std::vector<std::pair<int, Index>> failures;  // (n, k)
};

/// Checks C~ a^dag_k C~^-1 = (-1)^(N-n+1) S a_k S^-1 on C~(wedge^n), i.e. on
/// the level N - n; n is the level of the preimage psi.
inline TransferRecord twisted_ph_transfer_check(const FockSpace& f, const Matrix& s, double tol = 1e-10) {
  if (s.rows() != f.N || !is_unitary(s, 1e-8) || (s * s - identity(f.N)).norm() > 1e-8)
    fail(ErrorKind::InputShape, "twisted_ph_transfer_check: S must be a unitary involution");
  const AntiUnitaryOp ct = twisted_particle_hole(f, s);
  const Matrix gs = lift_unitary(f, s);
  TransferRecord rec;
  for (Index k = 0; k < f.N; ++k) {
    const Matrix lhs = conjugate_by(ct, Matrix(f.create[static_cast<std::size_t>(k)]));
    const Matrix rhs = gs * Matrix(f.annihilate[static_cast<std::size_t>(k)]) * gs.adjoint();
    for (int n = 0; n <= f.N; ++n) {
      const Matrix p = f.level_projector(static_cast<int>(f.N) - n);
      const double sign = (f.N - n + 1) % 2 ? -1.0 : 1.0;
      const double r = (lhs * p - sign * rhs * p).norm();
      rec.worst = std::max(rec.worst, r);
      if (r > tol) {
        rec.pass = false;
        rec.failures.emplace_back(n, k);
      }
    }
  }
  return rec;
}

/// Residuals of the CAR: max over k, l of |{a_k, a_l}| and |{a^dag_k, a_l} - delta|.
inline double car_residual(const FockSpace& f) {
  double worst = 0.0;
  const SparseMatrix id = Matrix::Identity(f.dim, f.dim).sparseView();
  for (Index k = 0; k < f.N; ++k)
    for (Index l = 0; l < f.N; ++l) {
      const auto& ak = f.annihilate[static_cast<std::size_t>(k)];
      const auto& al = f.annihilate[static_cast<std::size_t>(l)];
      const auto& ck = f.create[static_cast<std::size_t>(k)];
      SparseMatrix x = ak * al + al * ak;
      SparseMatrix y = ck * al + al * ck;
      if (k == l) y -= id;
      worst = std::max({worst, x.norm(), y.norm()});
    }
  return worst;
}

/// Many-body spectrum predicted from the Nambu generator: Tr W / 2 plus all
/// signed half-sums of its non-negative eigenvalues.
inline std::vector<double> predicted_fock_spectrum(const Matrix& w, const Matrix& z) {
  const RealVector e = eigvals_hermitian(nambu_generator(w, z));
  const Index n = w.rows();
  const double shift = w.trace().real() / 2.0;
  std::vector<double> out;
  for (Index mask = 0; mask < (Index{1} << n); ++mask) {
    double v = shift;
    for (Index j = 0; j < n; ++j) v += ((mask >> j) & 1 ? 0.5 : -0.5) * e(n + j);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tenfold
