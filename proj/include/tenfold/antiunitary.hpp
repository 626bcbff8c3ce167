#pragma once

// Anti-unitary operators v -> u conj(v), stored as their unitary part.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tenfold/group.hpp"
#include "tenfold/linalg.hpp"

namespace tenfold {

struct AntiUnitaryOp {
  Matrix u;

  Index dim() const { return u.rows(); }
  Vector apply(const Vector& v) const { return u * v.conjugate(); }
};

/// (A o B) v = u_A conj(u_B conj(v)) = u_A conj(u_B) v: the composite is linear.
inline Matrix compose(const AntiUnitaryOp& a, const AntiUnitaryOp& b) { return a.u * b.u.conjugate(); }

/// A o g: anti-unitary with unitary part u conj(g).
inline AntiUnitaryOp compose(const AntiUnitaryOp& a, const Matrix& g) { return {a.u * g.conjugate()}; }

/// A X A^-1 = u conj(X) u^dag for linear X.
inline Matrix conjugate_by(const AntiUnitaryOp& a, const Matrix& x) { return a.u * x.conjugate() * a.u.adjoint(); }

/// The same operator in the basis v' = W v: u' = W u W^t.
inline AntiUnitaryOp change_basis(const AntiUnitaryOp& a, const Matrix& w) { return {w * a.u * w.transpose()}; }

/// epsilon with u conj(u) = epsilon Id.
inline int parity(const AntiUnitaryOp& op, double tol = Tolerances{}.input) {
  if (!is_square(op.u)) fail(ErrorKind::InputShape, "parity: u_part not square");
  const Matrix sq = compose(op, op);
  const Matrix id = identity(op.dim());
  const double plus = (sq - id).norm();
  const double minus = (sq + id).norm();
  if (plus <= tol * std::sqrt(static_cast<double>(op.dim()))) return 1;
  if (minus <= tol * std::sqrt(static_cast<double>(op.dim()))) return -1;
  fail(ErrorKind::NotInvolutive, "u conj(u) is not +-Id (distances " + std::to_string(plus) + ", " +
                                     std::to_string(minus) + ")");
}

/// Does conjugation by `conj` map every generator back into the group?
inline bool normalizes(const GroupAction& action, const std::function<Matrix(const Matrix&)>& conj, double tol) {
  if (is_trivial(action)) return true;
  for (const auto& g : action.generators)
    if (!contains(action, conj(g), tol)) return false;
  return true;
}

inline bool normalizes(const GroupAction& action, const AntiUnitaryOp& op, double tol) {
  return normalizes(action, [&](const Matrix& g) { return conjugate_by(op, g); }, tol);
}

/// partner[lambda] = mu with op P_lambda op^-1 = P_mu.
inline std::vector<Index> sector_action(const AntiUnitaryOp& op, const std::vector<IsotypicBlock>& blocks,
                                        double tol = Tolerances{}.input) {
  std::vector<Index> partner(blocks.size(), -1);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Matrix image = conjugate_by(op, blocks[i].projector);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if ((image - blocks[j].projector).norm() <= tol * scale_of(image)) {
        partner[i] = static_cast<Index>(j);
        break;
      }
    }
    if (partner[i] < 0)
      fail(ErrorKind::InconsistentSymmetry, "image of projector " + std::to_string(i) + " matches no sector");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (partner[static_cast<std::size_t>(partner[i])] != static_cast<Index>(i))
      fail(ErrorKind::InconsistentSymmetry, "sector action is not an involution");
  return partner;
}

/// T restricted to a fixed sector, factored as alpha (x) beta on E (x) R.
struct TransferredT {
  AntiUnitaryOp alpha;
  AntiUnitaryOp beta;
  int eps_alpha = 1;
  int eps_beta = 1;
  double residual = 0.0;         // |U_block - u_alpha (x) u_beta|_F
  double second_singular = 0.0;  // sigma_2 / sigma_1 of the rearranged matrix
};

/// Unitary part of T on V_lambda in the factor basis: conj(T) acts on
/// coordinates c by c -> F^dag u conj(F) conj(c).
inline Matrix block_unitary_part(const IsotypicBlock& block, const AntiUnitaryOp& op) {
  const Matrix& f = block.factor_basis;
  return f.adjoint() * op.u * f.conjugate();
}

inline TransferredT transfer_T(const IsotypicBlock& block, const AntiUnitaryOp& op, double tol = Tolerances{}.input) {
  const Index m = block.multiplicity;
  const Index d = block.irrep_dim;
  const Matrix ub = block_unitary_part(block, op);
  if (!is_unitary(ub, 1e3 * tol))
    fail(ErrorKind::InconsistentSymmetry, "transfer_T: sector " + std::to_string(block.label) + " is not fixed");

  // Rank-one rearrangement: R[(e,f),(r,s)] = U[(e,r),(f,s)], so U = A (x) B <=> R = vec(A) vec(B)^t.
  Matrix rearranged(m * m, d * d);
  for (Index e = 0; e < m; ++e)
    for (Index f = 0; f < m; ++f)
      for (Index r = 0; r < d; ++r)
        for (Index s = 0; s < d; ++s) rearranged(e + f * m, r + s * d) = ub(e * d + r, f * d + s);
  Eigen::JacobiSVD<Matrix> svd(rearranged, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double s1 = sigma(0);
  const Vector a_vec = std::sqrt(s1) * svd.matrixU().col(0);
  const Vector b_vec = std::sqrt(s1) * svd.matrixV().col(0).conjugate();
  Matrix a = unvec(a_vec, m, m);
  Matrix b = unvec(b_vec, d, d);

  TransferredT out;
  out.second_singular = sigma.size() > 1 ? sigma(1) / s1 : 0.0;
  double tail = 0.0;
  for (Index i = 1; i < sigma.size(); ++i) tail += sigma(i) * sigma(i);
  if (std::sqrt(tail) > tol * scale_of(ub))
    fail(ErrorKind::NotPureTensor, "rank-one residual " + std::to_string(std::sqrt(tail)));

  // Move the scale into alpha so beta is anti-unitary, then fix beta's phase.
  const double scale = b.norm() / std::sqrt(static_cast<double>(d));
  b /= scale;
  a *= scale;
  Index bi = 0, bj = 0;
  b.cwiseAbs().maxCoeff(&bi, &bj);
  const Complex phase = b(bi, bj) / std::abs(b(bi, bj));
  b /= phase;
  a *= phase;

  out.alpha = {a};
  out.beta = {b};
  out.residual = (ub - kron(a, b)).norm();
  out.eps_alpha = parity(out.alpha, tol);
  out.eps_beta = parity(out.beta, tol);
  if (out.eps_alpha * out.eps_beta != parity(op, tol))
    fail(ErrorKind::InconsistentSymmetry, "eps_alpha * eps_beta differs from eps_T");
  return out;
}

enum class FormType { Symmetric, Skew };

inline constexpr std::string_view to_string(FormType t) { return t == FormType::Symmetric ? "symmetric" : "skew"; }

inline FormType bilinear_form_type(const Matrix& phi, double tol = Tolerances{}.input) {
  if (!is_square(phi)) fail(ErrorKind::InputShape, "bilinear_form_type: form not square");
  if (is_symmetric(phi, tol)) return FormType::Symmetric;
  if (is_skew(phi, tol)) return FormType::Skew;
  fail(ErrorKind::NotDefiniteType, "form is neither symmetric nor skew");
}

/// Matrix of the bilinear form Q(e, e') = <alpha e, e'> on E with Hermitian gram G.
inline Matrix alpha_form(const AntiUnitaryOp& alpha, const Matrix& gram) { return alpha.u.adjoint() * gram; }

}  // namespace tenfold
