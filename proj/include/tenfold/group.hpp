#pragma once

// Unitary symmetry groups acting on V, their commutant, and the isotypic
// decomposition V = (+)_lambda E_lambda (x) R_lambda.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tenfold/linalg.hpp"
#include "tenfold/random.hpp"

namespace tenfold {

enum class GroupMode { None, FiniteGroup, LieAlgebra, SpinHalf };

inline constexpr std::string_view to_string(GroupMode mode) {
  switch (mode) {
    case GroupMode::None: return "none";
    case GroupMode::FiniteGroup: return "finite-group";
    case GroupMode::LieAlgebra: return "lie-algebra";
    case GroupMode::SpinHalf: return "spin-half";
  }
  return "unknown";
}

struct GroupAction {
  Index dim = 0;
  GroupMode mode = GroupMode::None;
  std::vector<Matrix> generators;
  std::vector<Matrix> elements;  // finite-group mode only

  Index order() const { return static_cast<Index>(elements.size()); }
};

inline GroupAction trivial_action(Index dim) {
  GroupAction a;
  a.dim = dim;
  a.mode = GroupMode::None;
  return a;
}

/// Multiplicative closure of unitary generators. Elements closer than
/// `tol_dedup` in Frobenius norm are identified.
inline GroupAction close_group(Index dim, const std::vector<Matrix>& generators, std::size_t max_order = 10000,
                               double tol_input = Tolerances{}.input, double tol_dedup = Tolerances{}.dedup) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Matrix& g = generators[i];
    if (g.rows() != dim || g.cols() != dim)
      fail(ErrorKind::InputShape, "generator " + std::to_string(i) + " has wrong shape");
    if (!is_unitary(g, tol_input)) fail(ErrorKind::InputShape, "generator " + std::to_string(i) + " is not unitary");
  }
  GroupAction a;
  a.dim = dim;
  a.mode = GroupMode::FiniteGroup;
  a.generators = generators;
  a.elements.push_back(identity(dim));
  auto known = [&](const Matrix& m) {
    return std::any_of(a.elements.begin(), a.elements.end(),
                       [&](const Matrix& e) { return (e - m).norm() <= tol_dedup; });
  };
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    for (const auto& g : generators) {
      Matrix product = a.elements[i] * g;
      if (known(product)) continue;
      if (a.elements.size() >= max_order)
        fail(ErrorKind::GroupTooLarge, "closure exceeds max_order " + std::to_string(max_order));
      a.elements.push_back(std::move(product));
    }
  }
  return a;
}

/// Connected group given by anti-Hermitian Lie algebra generators.
inline GroupAction lie_algebra_action(Index dim, const std::vector<Matrix>& generators,
                                      double tol_input = Tolerances{}.input) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Matrix& x = generators[i];
    if (x.rows() != dim || x.cols() != dim)
      fail(ErrorKind::InputShape, "generator " + std::to_string(i) + " has wrong shape");
    if (!is_anti_hermitian(x, tol_input))
      fail(ErrorKind::InputShape, "generator " + std::to_string(i) + " is not anti-Hermitian");
  }
  GroupAction a;
  a.dim = dim;
  a.mode = GroupMode::LieAlgebra;
  a.generators = generators;
  return a;
}

/// SU(2) acting on V = E (x) C^2 through the second factor (E slow, C^2 fast).
inline GroupAction spin_half_action(Index dim) {
  if (dim < 2 || dim % 2 != 0) fail(ErrorKind::InputShape, "spin-half action needs even dimension");
  GroupAction a;
  a.dim = dim;
  a.mode = GroupMode::SpinHalf;
  const Matrix e = identity(dim / 2);
  a.generators = {kron(e, kI * pauli::x()), kron(e, kI * pauli::y()), kron(e, kI * pauli::z())};
  return a;
}

/// Charge U(1) acting on V by scalars z, Lie generator i Id.
inline GroupAction charge_action(Index dim) { return lie_algebra_action(dim, {kI * identity(dim)}); }

inline bool is_trivial(const GroupAction& a) { return a.mode == GroupMode::None || a.generators.empty(); }

/// Frobenius-orthonormal basis of {X : g X = X g for every generator g}.
inline std::vector<Matrix> commutant_basis(const GroupAction& action, double tol = Tolerances{}.input) {
  const Index n = action.dim;
  const Index gens = static_cast<Index>(action.generators.size());
  Matrix stacked(gens * n * n, n * n);
  for (Index i = 0; i < gens; ++i) {
    const Matrix& g = action.generators[static_cast<std::size_t>(i)];
    stacked.middleRows(i * n * n, n * n) = sylvester_operator(g, g);
  }
  const Matrix kernel = nullspace_below(stacked, tol * scale_of(stacked));
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(kernel.cols()));
  for (Index j = 0; j < kernel.cols(); ++j) out.push_back(unvec(kernel.col(j), n, n));
  return out;
}

/// Is `m` an element of the group (finite mode) or of the real span of the
/// Lie algebra generators (connected modes)?
inline bool contains(const GroupAction& action, const Matrix& m, double tol) {
  switch (action.mode) {
    case GroupMode::None: return (m - identity(action.dim)).norm() <= tol * scale_of(m);
    case GroupMode::FiniteGroup:
      return std::any_of(action.elements.begin(), action.elements.end(),
                         [&](const Matrix& e) { return (e - m).norm() <= tol * scale_of(m); });
    case GroupMode::LieAlgebra:
    case GroupMode::SpinHalf: {
      const auto basis = real_orthonormalize(action.generators);
      return real_residual(basis, m) <= tol * scale_of(m);
    }
  }
  return false;
}

/// One sector lambda of the isotypic decomposition.
struct IsotypicBlock {
  Index label = 0;
  Index irrep_dim = 1;     // d_lambda
  Index multiplicity = 1;  // m_lambda = dim E_lambda
  Matrix projector;        // P_lambda on V
  Matrix factor_basis;     // n x (m d), column e * d + r <-> e_e (x) r_r
  Matrix gram_E;           // transferred scalar product on E_lambda

  Index size() const { return irrep_dim * multiplicity; }

  /// Columns spanning the copy of R_lambda used as the standard irrep space.
  Matrix irrep_basis() const { return factor_basis.leftCols(irrep_dim); }

  /// rho_lambda(g) in the standard irrep space.
  Matrix irrep(const Matrix& g) const {
    const Matrix q = irrep_basis();
    return q.adjoint() * g * q;
  }

  /// The equivariant map psi_e : R_lambda -> V for E-basis vector e.
  Matrix e_map(Index e) const { return factor_basis.middleCols(e * irrep_dim, irrep_dim); }
};

inline Matrix transfer_hermitian(const IsotypicBlock& block, const Matrix& ambient, const Vector& r) {
  if (r.size() != block.irrep_dim) fail(ErrorKind::InputShape, "transfer_hermitian: r has wrong length");
  const double rr = r.squaredNorm();
  if (rr == 0.0) fail(ErrorKind::InputShape, "transfer_hermitian: r must be nonzero");
  const Index m = block.multiplicity;
  Matrix images(ambient.rows(), m);
  for (Index e = 0; e < m; ++e) images.col(e) = block.e_map(e) * r;
  return images.adjoint() * ambient * images / rr;
}

namespace detail {

inline std::vector<Matrix> restrict_generators(const std::vector<Matrix>& gens, const Matrix& q) {
  std::vector<Matrix> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(q.adjoint() * g * q);
  return out;
}

/// Basis of Hom_G(X, Y) = {psi : rho_Y(g) psi = psi rho_X(g)} as dy*dx vectors.
inline Matrix intertwiners(const std::vector<Matrix>& rho_x, const std::vector<Matrix>& rho_y, double tol) {
  const Index dx = rho_x.front().rows();
  const Index dy = rho_y.front().rows();
  const Index k = static_cast<Index>(rho_x.size());
  Matrix stacked(k * dx * dy, dx * dy);
  for (Index i = 0; i < k; ++i) {
    const auto s = static_cast<std::size_t>(i);
    // vec(rho_y psi - psi rho_x)
    stacked.middleRows(i * dx * dy, dx * dy) =
        kron(identity(dx), rho_y[s]) - kron(rho_x[s].transpose(), identity(dy));
  }
  return nullspace_below(stacked, tol * scale_of(stacked));
}

struct Sector {
  Matrix basis;  // n x d, orthonormal, invariant
  std::vector<Matrix> rho;
};

}  // namespace detail

/// Isotypic decomposition. Eigenspaces of a random Hermitian element of the
/// commutant are irreducible subrepresentations (generically); equivariant
/// maps between them sort them into isomorphism classes.
inline std::vector<IsotypicBlock> isotypic_decompose(const GroupAction& action, RngStream& rng,
                                                     const Tolerances& tol = {}) {
  const Index n = action.dim;
  auto finish = [&](IsotypicBlock b) {
    b.projector = b.factor_basis * b.factor_basis.adjoint();
    Vector r = Vector::Zero(b.irrep_dim);
    r(0) = 1.0;
    b.gram_E = transfer_hermitian(b, identity(n), r);
    return b;
  };

  if (is_trivial(action)) {
    IsotypicBlock b;
    b.irrep_dim = 1;
    b.multiplicity = n;
    b.factor_basis = identity(n);
    return {finish(std::move(b))};
  }
  if (action.mode == GroupMode::SpinHalf) {
    IsotypicBlock b;
    b.irrep_dim = 2;
    b.multiplicity = n / 2;
    b.factor_basis = identity(n);
    return {finish(std::move(b))};
  }

  const auto commutant = commutant_basis(action, tol.input);
  constexpr int kRetries = 5;
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    Matrix h = Matrix::Zero(n, n);
    for (const auto& b : commutant) {
      const Complex c = rng.complex_normal();
      h += 0.5 * (c * b + std::conj(c) * b.adjoint());
    }
    h /= std::max(h.norm(), 1e-300);
    const auto sys = eig_hermitian(h);

    std::vector<detail::Sector> sectors;
    bool degenerate = false;
    for (Index start = 0; start < n && !degenerate;) {
      Index stop = start + 1;
      while (stop < n && sys.values(stop) - sys.values(stop - 1) <= tol.cluster_gap) ++stop;
      detail::Sector s;
      s.basis = sys.vectors.middleCols(start, stop - start);
      s.rho = detail::restrict_generators(action.generators, s.basis);
      if (detail::intertwiners(s.rho, s.rho, tol.input).cols() != 1) degenerate = true;
      sectors.push_back(std::move(s));
      start = stop;
    }
    if (degenerate) continue;

    // classes[c] = indices of sectors in isomorphism class c; maps[i] = psi_i.
    std::vector<std::vector<std::size_t>> classes;
    std::vector<Matrix> maps(sectors.size());
    for (std::size_t i = 0; i < sectors.size() && !degenerate; ++i) {
      bool placed = false;
      for (auto& cls : classes) {
        const auto& ref = sectors[cls.front()];
        if (ref.basis.cols() != sectors[i].basis.cols()) continue;
        const Matrix hom = detail::intertwiners(ref.rho, sectors[i].rho, tol.input);
        if (hom.cols() == 0) continue;
        if (hom.cols() > 1) {
          degenerate = true;
          break;
        }
        const Index d = ref.basis.cols();
        Matrix psi = unvec(hom.col(0), d, d);
        psi *= std::sqrt(static_cast<double>(d)) / psi.norm();
        maps[i] = psi;
        cls.push_back(i);
        placed = true;
        break;
      }
      if (!placed && !degenerate) {
        maps[i] = identity(sectors[i].basis.cols());
        classes.push_back({i});
      }
    }
    if (degenerate) continue;

    std::vector<IsotypicBlock> blocks;
    for (const auto& cls : classes) {
      IsotypicBlock b;
      b.irrep_dim = sectors[cls.front()].basis.cols();
      b.multiplicity = static_cast<Index>(cls.size());
      b.factor_basis.resize(n, b.irrep_dim * b.multiplicity);
      for (std::size_t e = 0; e < cls.size(); ++e)
        b.factor_basis.middleCols(static_cast<Index>(e) * b.irrep_dim, b.irrep_dim) =
            sectors[cls[e]].basis * maps[cls[e]];
      blocks.push_back(finish(std::move(b)));
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const IsotypicBlock& a, const IsotypicBlock& b) {
      return a.irrep_dim != b.irrep_dim ? a.irrep_dim < b.irrep_dim : a.multiplicity < b.multiplicity;
    });
    for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i].label = static_cast<Index>(i);
    return blocks;
  }
  fail(ErrorKind::DegenerateDecomposition,
       "random commutant element degenerate after " + std::to_string(kRetries) + " retries");
}

/// Frobenius-Schur indicator (1/|G|) sum_g chi_lambda(g^2), rounded to {+1, 0, -1}.
inline int fs_indicator(const GroupAction& action, const IsotypicBlock& block) {
  if (action.mode != GroupMode::FiniteGroup)
    fail(ErrorKind::UnsupportedMode, "fs_indicator needs a finite group, got " + std::string(to_string(action.mode)));
  const Matrix q = block.irrep_basis();
  Complex sum = 0.0;
  for (const auto& g : action.elements) sum += (q.adjoint() * g * g * q).trace();
  const double value = sum.real() / static_cast<double>(action.elements.size());
  if (value > 0.5) return 1;
  if (value < -0.5) return -1;
  return 0;
}

}  // namespace tenfold
