#pragma once

// Hand-built irreducible representations of small finite groups, with their
// Frobenius-Schur type taken from character tables. These are the
// independent oracle for the reduction tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "tenfold/antiunitary.hpp"
#include "tenfold/classifier.hpp"
#include "tenfold/group.hpp"
#include "tenfold/random.hpp"

namespace fixtures {

using tenfold::Complex;
using tenfold::Index;
using tenfold::Matrix;

struct Irrep {
  std::vector<Matrix> gens;  // images of the abstract generators
  int fs = 1;                // +1 real, 0 complex, -1 quaternionic
  int partner = -1;          // complex irreps: index of the conjugate irrep (conj(gens) equals its gens)
  Matrix real_structure;     // self-conjugate irreps: W with W conj(rho) W^-1 = rho

  Index dim() const { return gens.empty() ? 1 : gens.front().rows(); }
};

struct GroupModel {
  std::string name;
  Index order = 1;
  std::vector<Irrep> irreps;
};

inline Matrix scalar(Complex z) {
  Matrix m(1, 1);
  m(0, 0) = z;
  return m;
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline GroupModel trivial_group() {
  GroupModel g{"trivial", 1, {}};
  g.irreps.push_back({{}, 1, -1, scalar(1.0)});
  return g;
}

inline GroupModel z3() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  GroupModel g{"Z3", 3, {}};
  g.irreps.push_back({{scalar(1.0)}, 1, -1, scalar(1.0)});
  g.irreps.push_back({{scalar(w)}, 0, 2, Matrix()});
  g.irreps.push_back({{scalar(std::conj(w))}, 0, 1, Matrix()});
  return g;
}

inline GroupModel s3() {
  // generators: 3-cycle r, transposition s
  const double c = -0.5, s = std::sqrt(3.0) / 2.0;
  GroupModel g{"S3", 6, {}};
  g.irreps.push_back({{scalar(1.0), scalar(1.0)}, 1, -1, scalar(1.0)});
  g.irreps.push_back({{scalar(1.0), scalar(-1.0)}, 1, -1, scalar(1.0)});
  g.irreps.push_back({{mat2(c, -s, s, c), mat2(1.0, 0.0, 0.0, -1.0)}, 1, -1, tenfold::identity(2)});
  return g;
}

inline GroupModel d4() {
  // generators: rotation r of order 4, reflection s
  GroupModel g{"D4", 8, {}};
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) g.irreps.push_back({{scalar(a), scalar(b)}, 1, -1, scalar(1.0)});
  g.irreps.push_back({{mat2(0.0, -1.0, 1.0, 0.0), mat2(1.0, 0.0, 0.0, -1.0)}, 1, -1, tenfold::identity(2)});
  return g;
}

inline GroupModel q8() {
  // generators i, j of the quaternion group
  using tenfold::kI;
  GroupModel g{"Q8", 8, {}};
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) g.irreps.push_back({{scalar(a), scalar(b)}, 1, -1, scalar(1.0)});
  g.irreps.push_back({{kI * tenfold::pauli::x(), kI * tenfold::pauli::z()}, -1, -1, kI * tenfold::pauli::y()});
  return g;
}

inline std::vector<GroupModel> all_groups() { return {trivial_group(), z3(), s3(), d4(), q8()}; }

struct Expected {
  Index d;
  Index m;
  std::string family;
  bool operator<(const Expected& o) const {
    return std::tie(d, m, family) < std::tie(o.d, o.m, o.family);
  }
  bool operator==(const Expected& o) const = default;
};

/// A representation V = (+)_lambda C^{m_lambda} (x) R_lambda, optionally with T,
/// in a random orthonormal basis.
struct RandomSetting {
  std::string description;
  Index dim = 0;
  std::vector<Matrix> generators;
  bool has_t = false;
  tenfold::AntiUnitaryOp t;
  int eps_t = 0;
  std::vector<Expected> expected;  // sorted
  std::vector<int> expected_fs;    // per present self-conjugate irrep, by (d, m)
};

inline Matrix random_symmetric_unitary(Index m, tenfold::RngStream& rng) {
  const Matrix u = tenfold::haar_unitary(m, rng);
  return u * u.transpose();
}

inline Matrix random_skew_unitary(Index m, tenfold::RngStream& rng) {
  const Matrix u = tenfold::haar_unitary(m, rng);
  return u * tenfold::symplectic_form(m) * u.transpose();
}

/// t_mode: 0 absent, +1, -1.
inline RandomSetting build_setting(const GroupModel& group, int t_mode, tenfold::RngStream& rng) {
  using tenfold::kron;
  RandomSetting out;
  out.has_t = t_mode != 0;
  out.eps_t = t_mode;
  out.description = group.name + " T=" + std::to_string(t_mode);
  const std::size_t k = group.irreps.size();
  std::vector<Index> mult(k, 0);
  bool any = false;
  while (!any) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& ir = group.irreps[i];
      if (ir.fs == 0 && ir.partner < static_cast<int>(i)) {
        mult[i] = mult[static_cast<std::size_t>(ir.partner)];
        continue;
      }
      Index m = static_cast<Index>(rng.next_u64() % 3);
      if (t_mode != 0 && ir.fs != 0 && t_mode * ir.fs == -1 && m % 2 == 1) m += 1;
      mult[i] = m;
    }
    for (auto m : mult) any = any || m > 0;
  }

  const std::size_t ngen = group.irreps.front().gens.size();
  Index dim = 0;
  for (std::size_t i = 0; i < k; ++i) dim += mult[i] * group.irreps[i].dim();
  out.dim = dim;

  std::vector<Matrix> gens(ngen, Matrix::Zero(dim, dim));
  Matrix tu = Matrix::Zero(dim, dim);
  std::vector<Index> offset(k, 0);
  Index at = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& ir = group.irreps[i];
    const Index d = ir.dim();
    offset[i] = at;
    const Index size = mult[i] * d;
    for (std::size_t a = 0; a < ngen; ++a)
      gens[a].block(at, at, size, size) = kron(tenfold::identity(mult[i]), ir.gens[a]);
    at += size;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (mult[i] == 0) continue;
    const auto& ir = group.irreps[i];
    const Index d = ir.dim();
    const Index m = mult[i];
    if (ir.fs == 0) {
      // without T each complex irrep is its own class; with T the pair is swapped and reported once
      if (t_mode == 0) {
        out.expected.push_back({d, m, "A"});
      } else if (static_cast<int>(i) < ir.partner) {
        out.expected.push_back({d, m, "A"});
        const auto j = static_cast<std::size_t>(ir.partner);
        tu.block(offset[i], offset[j], m * d, m * d) = tenfold::identity(m * d);
        tu.block(offset[j], offset[i], m * d, m * d) = static_cast<double>(t_mode) * tenfold::identity(m * d);
      }
      continue;
    }
    if (t_mode == 0) {
      out.expected.push_back({d, m, "A"});
      continue;
    }
    const int eps_alpha = t_mode * ir.fs;
    const Matrix alpha = eps_alpha == 1 ? random_symmetric_unitary(m, rng) : random_skew_unitary(m, rng);
    tu.block(offset[i], offset[i], m * d, m * d) = kron(alpha, ir.real_structure);
    out.expected.push_back({d, m, eps_alpha == 1 ? "AI" : "AII"});
    out.expected_fs.push_back(ir.fs);
  }
  std::sort(out.expected.begin(), out.expected.end());

  const Matrix w = tenfold::haar_unitary(dim, rng);
  for (auto& g : gens) g = w * g * w.adjoint();
  out.generators = gens;
  if (t_mode != 0) out.t = tenfold::change_basis({tu}, w);
  return out;
}

// Independent brute force: real basis of Hermitian k x k matrices, every
// constraint written out with explicit block formulas on W = V (+) V*.
inline Index brute_force_dimension(const tenfold::SymmetrySetting& s) {
  const bool nambu = s.kind == tenfold::SpaceKind::Nambu;
  const Index n = s.dim_V;
  const Index k = nambu ? 2 * n : n;
  std::vector<Matrix> herm;
  for (Index i = 0; i < k; ++i)
    for (Index j = i; j < k; ++j) {
      Matrix a = Matrix::Zero(k, k);
      a(i, j) = 1.0;
      a(j, i) = 1.0;
      herm.push_back(a);
      if (i != j) {
        Matrix b = Matrix::Zero(k, k);
        b(i, j) = Complex(0.0, 1.0);
        b(j, i) = Complex(0.0, -1.0);
        herm.push_back(b);
      }
    }
  const auto lift = [&](const Matrix& g) {
    Matrix out = Matrix::Zero(k, k);
    out.topLeftCorner(n, n) = g;
    out.bottomRightCorner(n, n) = g.conjugate();
    return out;
  };
  std::vector<std::function<Matrix(const Matrix&)>> cons;
  if (!nambu) {
    for (const auto& g : s.g0.generators) cons.push_back([g](const Matrix& h) -> Matrix { return g * h - h * g; });
    if (s.T) {
      const Matrix u = s.T->u;
      cons.push_back([u](const Matrix& h) -> Matrix { return u * h.conjugate() * u.adjoint() - h; });
    }
  } else {
    // BdG form: H = [[W, Z], [Z^dag, -W^t]] with Z skew
    cons.push_back([n](const Matrix& h) -> Matrix {
      Matrix r(2 * n, 2 * n);
      r << h.topLeftCorner(n, n) + h.bottomRightCorner(n, n).transpose(), h.topRightCorner(n, n) + h.topRightCorner(n, n).transpose(),
          Matrix::Zero(n, n), Matrix::Zero(n, n);
      return r;
    });
    for (const auto& g : s.g0.generators) {
      const Matrix lg = lift(g);
      cons.push_back([lg](const Matrix& h) -> Matrix { return lg * h - h * lg; });
    }
    if (s.T) {
      const Matrix ut = lift(s.T->u);
      cons.push_back([ut](const Matrix& h) -> Matrix { return ut * h.conjugate() * ut.adjoint() - h; });
    }
    if (s.S) {
      Matrix uc = Matrix::Zero(k, k);
      uc.topRightCorner(n, n) = *s.S;
      uc.bottomLeftCorner(n, n) = s.S->conjugate();
      cons.push_back([uc](const Matrix& h) -> Matrix { return uc * h.conjugate() * uc.adjoint() - h; });
    }
  }
  // constraint matrix on the real coefficients of the Hermitian basis
  Index rows = 0;
  std::vector<tenfold::RealMatrix> blocks;
  for (const auto& f : cons) {
    tenfold::RealMatrix b(2 * k * k, static_cast<Index>(herm.size()));
    for (std::size_t c = 0; c < herm.size(); ++c) {
      const Matrix img = f(herm[c]);
      for (Index i = 0; i < k * k; ++i) {
        b(i, static_cast<Index>(c)) = img.data()[i].real();
        b(k * k + i, static_cast<Index>(c)) = img.data()[i].imag();
      }
    }
    rows += b.rows();
    blocks.push_back(b);
  }
  tenfold::RealMatrix all(std::max<Index>(rows, 1), static_cast<Index>(herm.size()));
  all.setZero();
  Index at = 0;
  for (const auto& b : blocks) {
    all.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  Eigen::JacobiSVD<tenfold::RealMatrix> svd(all);
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9) ++rank;
  return static_cast<Index>(herm.size()) - rank;
}

}  // namespace fixtures
