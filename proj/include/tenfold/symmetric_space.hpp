#pragma once

// Cartan involutions, the Cartan embedding M = {x in U : tau(x) = x^-1},
// tangent splittings u = k + p and the double-commutator closure check.

#include <functional>
#include <string>
#include <vector>

#include "tenfold/class_label.hpp"
#include "tenfold/linalg.hpp"
#include "tenfold/random.hpp"

namespace tenfold {

enum class InvolutionKind { Conjugation, TwistedConjugation, Grading, Flip };

inline constexpr std::string_view to_string(InvolutionKind k) {
  switch (k) {
    case InvolutionKind::Conjugation: return "conjugation";
    case InvolutionKind::TwistedConjugation: return "conjugation twisted by J";
    case InvolutionKind::Grading: return "conjugation by S";
    case InvolutionKind::Flip: return "flip on the doubled group";
  }
  return "?";
}

/// diag(J_p, J_q): the symplectic form compatible with S = diag(I_p, -I_q).
inline Matrix split_symplectic_form(Index p, Index q) { return block_diag(symplectic_form(p), symplectic_form(q)); }

/// Permutation O with O J O^t = diag(J_p, J_q).
inline Matrix split_symplectic_permutation(Index p, Index q) {
  const Index n = p + q, h = n / 2;
  Matrix o = Matrix::Zero(n, n);
  for (Index k = 0; k < p / 2; ++k) {
    o(k, k) = 1.0;
    o(k + p / 2, k + h) = 1.0;
  }
  for (Index k = 0; k < q / 2; ++k) {
    o(p + k, p / 2 + k) = 1.0;
    o(p + q / 2 + k, p / 2 + k + h) = 1.0;
  }
  return o;
}

struct CartanPair {
  ClassLabel label;
  InvolutionKind kind = InvolutionKind::Conjugation;
  Index size = 0;   // matrices in U are size x size (for group types: the group K itself)
  Matrix twist;     // J or S when relevant
  Matrix form;      // symplectic form defining U for C, CI, CII

  /// Defect of u from the compact group U (0 for members).
  double group_defect(const Matrix& u) const {
    if (u.rows() != size || u.cols() != size) return std::numeric_limits<double>::infinity();
    double d = unitary_defect(u);
    switch (label.family) {
      case Family::C:
      case Family::CI:
      case Family::CII: d += (form * u.conjugate() * form.adjoint() - u).norm(); break;
      case Family::D:
      case Family::DIII: d += u.imag().norm() + std::abs(u.real().determinant() - 1.0); break;
      case Family::BDI: d += u.imag().norm(); break;
      default: break;
    }
    return d;
  }

  /// Defect of a Lie algebra element from the algebra of U.
  double algebra_defect(const Matrix& x) const {
    double d = (x + x.adjoint()).norm();
    switch (label.family) {
      case Family::C:
      case Family::CI:
      case Family::CII: d += (form * x.conjugate() * form.adjoint() - x).norm(); break;
      case Family::D:
      case Family::DIII:
      case Family::BDI: d += x.imag().norm(); break;
      default: break;
    }
    return d;
  }

  /// tau on U. Group types are modeled as K x K with the flip; there tau
  /// acts on block-diagonal pairs diag(k, k').
  Matrix tau(const Matrix& u) const {
    switch (kind) {
      case InvolutionKind::Conjugation: return u.conjugate();
      case InvolutionKind::TwistedConjugation:
        if (label.family == Family::DIII) return twist * u * twist.adjoint();
        return twist * u.conjugate() * twist.adjoint();
      case InvolutionKind::Grading: return twist * u * twist;
      case InvolutionKind::Flip: {
        const Index n = u.rows() / 2;
        return block_diag(u.bottomRightCorner(n, n), u.topLeftCorner(n, n));
      }
    }
    return u;
  }

  /// d tau on the Lie algebra; every tau above is real-linear, so it is the same formula.
  Matrix dtau(const Matrix& x) const { return tau(x); }
};

/// Cartan involution for a label, with fixed bases: J = [[0, I], [-I, 0]] and
/// S = diag(I_p, -I_q). CII uses the form diag(J_p, J_q), which commutes with S.
inline CartanPair involution(const ClassLabel& label) {
  CartanPair c;
  c.label = label;
  const Index n = label.n;
  switch (label.family) {
    case Family::A: c.kind = InvolutionKind::Flip; c.size = n; break;
    case Family::C:
      c.kind = InvolutionKind::Flip;
      c.size = 2 * n;
      c.form = symplectic_form(2 * n);
      break;
    case Family::D: c.kind = InvolutionKind::Flip; c.size = 2 * n; break;
    case Family::AI: c.kind = InvolutionKind::Conjugation; c.size = n; break;
    case Family::AII:
      c.kind = InvolutionKind::TwistedConjugation;
      c.size = n;
      c.twist = symplectic_form(n);
      break;
    case Family::CI:
      c.kind = InvolutionKind::Conjugation;
      c.size = 2 * n;
      c.form = symplectic_form(2 * n);
      break;
    case Family::DIII:
      c.kind = InvolutionKind::TwistedConjugation;
      c.size = 2 * n;
      c.twist = symplectic_form(2 * n);
      break;
    case Family::AIII:
    case Family::BDI:
    case Family::CII:
      c.kind = InvolutionKind::Grading;
      c.size = label.p + label.q;
      c.twist = grading(label.p, label.q);
      if (label.family == Family::CII) c.form = split_symplectic_form(label.p, label.q);
      break;
  }
  return c;
}

/// Haar sample from U (for group types: from K).
inline Matrix haar_in_group(const CartanPair& pair, RngStream& rng) {
  switch (pair.label.family) {
    case Family::A:
    case Family::AI:
    case Family::AII:
    case Family::AIII: return haar_unitary(pair.size, rng);
    case Family::C:
    case Family::CI: return haar_symplectic(pair.size, rng);
    case Family::D:
    case Family::DIII: return haar_special_orthogonal(pair.size, rng);
    case Family::BDI: return haar_orthogonal(pair.size, rng);
    case Family::CII: {
      const Matrix o = split_symplectic_permutation(pair.label.p, pair.label.q);
      return o * haar_symplectic(pair.size, rng) * o.transpose();
    }
  }
  fail(ErrorKind::UnsupportedFamily, "no Haar sampler");
}

/// x = u tau(u^-1). For group types M is identified with K and x = u.
inline Matrix cartan_embed(const Matrix& u, const CartanPair& pair, double tol = Tolerances{}.input) {
  const double defect = pair.group_defect(u);
  if (!(defect <= tol * std::max(1.0, std::sqrt(static_cast<double>(pair.size)))))
    fail(ErrorKind::InputShape, "cartan_embed: u is not in " + compatible_space(pair.label).group);
  if (is_group_type(pair.label.family)) return u;
  return u * pair.tau(u.adjoint());
}

/// |tau(x) x - 1|_F plus the distance of x from U. Group types are checked in
/// the doubled model on diag(x, x^-1).
inline double membership_residual(const Matrix& x, const CartanPair& pair) {
  const double in_group = pair.group_defect(x);
  if (!std::isfinite(in_group)) return in_group;
  if (is_group_type(pair.label.family)) {
    const Matrix doubled = block_diag(x, x.adjoint());
    return in_group + (pair.tau(doubled) * doubled - identity(2 * x.rows())).norm();
  }
  return in_group + (pair.tau(x) * x - identity(x.rows())).norm();
}

inline bool in_M(const Matrix& x, const CartanPair& pair, double tol) { return membership_residual(x, pair) <= tol; }

/// s_y(x) = y x^-1 y.
inline Matrix geodesic_inversion(const Matrix& y, const Matrix& x, const CartanPair& pair, double tol = 1e-8) {
  if (!in_M(x, pair, tol)) fail(ErrorKind::NotInM, "geodesic_inversion: x not in M");
  if (!in_M(y, pair, tol)) fail(ErrorKind::NotInM, "geodesic_inversion: y not in M");
  return y * x.adjoint() * y;
}

/// x -> u x tau(u^-1), the U-action preserving M.
inline Matrix twisted_conjugation(const Matrix& u, const Matrix& x, const CartanPair& pair) {
  if (is_group_type(pair.label.family)) return u * x;
  return u * x * pair.tau(u.adjoint());
}

/// -Tr(x^-1 a x^-1 b) for tangent vectors a, b at x.
inline double metric(const Matrix& x, const Matrix& a, const Matrix& b) {
  const Matrix xi = x.adjoint();
  return -(xi * a * xi * b).trace().real();
}

struct TangentDecomposition {
  std::vector<Matrix> k_basis;
  std::vector<Matrix> p_basis;
  Index algebra_dim = 0;
};

/// Lie algebra of U (of K x K for group types) split into dtau = +-1.
inline TangentDecomposition tangent_split(const CartanPair& pair) {
  const Index n = pair.size;
  const bool doubled = is_group_type(pair.label.family);
  std::vector<RealLinearMap> algebra;
  algebra.push_back([](const Matrix& x) -> Matrix { return x + x.adjoint(); });
  switch (pair.label.family) {
    case Family::C:
    case Family::CI:
    case Family::CII: {
      const Matrix f = pair.form;
      algebra.push_back([f](const Matrix& x) -> Matrix { return f * x.conjugate() * f.adjoint() - x; });
      break;
    }
    case Family::D:
    case Family::DIII:
    case Family::BDI:
      algebra.push_back([](const Matrix& x) -> Matrix { return x - x.conjugate(); });
      break;
    default: break;
  }
  TangentDecomposition out;
  if (doubled) {
    const auto base = real_solution_space(n, n, algebra);
    out.algebra_dim = 2 * static_cast<Index>(base.size());
    const double r = 1.0 / std::sqrt(2.0);
    for (const auto& x : base) {
      out.k_basis.push_back(r * block_diag(x, x));
      out.p_basis.push_back(r * block_diag(x, -x));
    }
    return out;
  }
  auto with = [&](double sign) {
    auto c = algebra;
    c.push_back([&pair, sign](const Matrix& x) -> Matrix { return pair.dtau(x) - sign * x; });
    return real_solution_space(n, n, c);
  };
  out.k_basis = with(1.0);
  out.p_basis = with(-1.0);
  out.algebra_dim = static_cast<Index>(real_solution_space(n, n, algebra).size());
  return out;
}

struct BracketResiduals {
  double kk = 0.0;  // |[k, k]|_p-part
  double kp = 0.0;
  double pp = 0.0;
};

/// Largest violation of [k,k] in k, [k,p] in p, [p,p] in k over basis pairs,
/// measured as |dtau(C) -+ C|, relative to the product of norms.
inline BracketResiduals bracket_residuals(const CartanPair& pair, const TangentDecomposition& t) {
  BracketResiduals r;
  auto worst = [&](const std::vector<Matrix>& a, const std::vector<Matrix>& b, double sign) {
    double w = 0.0;
    for (const auto& x : a)
      for (const auto& y : b) {
        const Matrix c = commutator(x, y);
        w = std::max(w, (pair.dtau(c) - sign * c).norm() / (x.norm() * y.norm()));
      }
    return w;
  };
  r.kk = worst(t.k_basis, t.k_basis, 1.0);
  r.kp = worst(t.k_basis, t.p_basis, -1.0);
  r.pp = worst(t.p_basis, t.p_basis, 1.0);
  return r;
}

struct ClosureResult {
  bool pass = false;
  double max_residual = 0.0;
};

/// Does [X, [Y, Z]] stay in span(p_basis) for all basis triples?
inline ClosureResult closure_check(const std::vector<Matrix>& p_basis, double tol = 1e-9) {
  if (p_basis.empty()) fail(ErrorKind::InputShape, "closure_check needs at least one basis element");
  const auto basis = real_orthonormalize(p_basis);
  ClosureResult out;
  for (const auto& x : p_basis)
    for (const auto& y : p_basis)
      for (const auto& z : p_basis) {
        const Matrix c = commutator(x, commutator(y, z));
        const double rel = real_residual(basis, c) / (x.norm() * y.norm() * z.norm());
        out.max_residual = std::max(out.max_residual, rel);
      }
  out.pass = out.max_residual <= tol;
  return out;
}

}  // namespace tenfold
