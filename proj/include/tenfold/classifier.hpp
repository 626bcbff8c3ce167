#pragma once

// Symmetry settings and the decision procedure assigning Cartan labels.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tenfold/antiunitary.hpp"
#include "tenfold/class_label.hpp"
#include "tenfold/group.hpp"
#include "tenfold/random.hpp"

namespace tenfold {

enum class SpaceKind { Hilbert, Nambu };

inline constexpr std::string_view to_string(SpaceKind k) { return k == SpaceKind::Hilbert ? "hilbert" : "nambu"; }

/// Operators induced on W = V (+) V*. Coordinates of f in V* are taken in
/// the dual basis, so (g^-1)^t = conj(g) for unitary g.
struct NambuData {
  Index dim_W = 0;
  std::vector<Matrix> generators;        // g -> diag(g, conj g); Lie X -> diag(X, conj X)
  std::optional<AntiUnitaryOp> T;        // u -> diag(u, conj u)
  std::optional<AntiUnitaryOp> C_twist;  // [[0, S], [conj S, 0]]
  AntiUnitaryOp particle_hole;           // [[0, I], [I, 0]]: C H C^-1 = -H for every one-body H
  Matrix pairing;                        // canonical symmetric form <v (+) f, v' (+) f'> = f(v') + f'(v)
  Matrix majorana;                       // rows: coordinates of c_j in (a, a^dag), divided by sqrt 2
};

struct SymmetrySetting {
  SpaceKind kind = SpaceKind::Hilbert;
  Index dim_V = 0;
  GroupAction g0;
  std::optional<AntiUnitaryOp> T;
  std::optional<Matrix> S;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::optional<NambuData> nambu;
};

/// Lift a V-level generator to W.
inline Matrix nambu_lift(const Matrix& g) { return block_diag(g, g.conjugate()); }

inline Matrix majorana_map(Index n) {
  Matrix lambda = Matrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    lambda(2 * k, k) = 1.0;
    lambda(2 * k, n + k) = 1.0;
    lambda(2 * k + 1, k) = kI;
    lambda(2 * k + 1, n + k) = -kI;
  }
  return lambda / std::sqrt(2.0);
}

/// Checks unitarity, parities and compatibility of T and S with G0.
inline void validate_setting(const SymmetrySetting& s) {
  const Index n = s.dim_V;
  const double tol = s.tol.input;
  if (s.g0.dim != n) fail(ErrorKind::InputShape, "g0 acts on dimension " + std::to_string(s.g0.dim));
  if (s.T) {
    const Matrix& u = s.T->u;
    if (u.rows() != n || u.cols() != n) fail(ErrorKind::InputShape, "time_reversal.matrix has wrong shape");
    if (!is_unitary(u, tol)) fail(ErrorKind::InputShape, "time_reversal.matrix is not unitary");
    parity(*s.T, tol);
    if (!normalizes(s.g0, *s.T, std::max(tol, 1e-10)))
      fail(ErrorKind::InconsistentSymmetry, "T does not normalize G0");
  }
  if (s.S) {
    const Matrix& m = *s.S;
    if (m.rows() != n || m.cols() != n) fail(ErrorKind::InputShape, "particle_hole.s_matrix has wrong shape");
    if (!is_unitary(m, tol)) fail(ErrorKind::InputShape, "particle_hole.s_matrix is not unitary");
    if ((m * m - identity(n)).norm() > tol * std::sqrt(static_cast<double>(n)))
      fail(ErrorKind::InputShape, "particle_hole.s_matrix is not an involution");
    if (!normalizes(s.g0, [&](const Matrix& g) { return Matrix(m * g * m.adjoint()); }, std::max(tol, 1e-10)))
      fail(ErrorKind::InconsistentSymmetry, "S does not normalize G0");
    if (s.T && (conjugate_by(*s.T, m) - m).norm() > tol * scale_of(m))
      fail(ErrorKind::InconsistentSymmetry, "S does not commute with T");
  }
}

inline SymmetrySetting build_nambu(const SymmetrySetting& in) {
  const Index n = in.dim_V;
  if (in.S && (*in.S * *in.S - identity(n)).norm() > in.tol.input * std::sqrt(static_cast<double>(n)))
    fail(ErrorKind::InputShape, "S is not an involution");
  SymmetrySetting out = in;
  out.kind = SpaceKind::Nambu;
  NambuData nd;
  nd.dim_W = 2 * n;
  for (const auto& g : in.g0.generators) nd.generators.push_back(nambu_lift(g));
  if (in.T) nd.T = AntiUnitaryOp{nambu_lift(in.T->u)};
  Matrix swap = Matrix::Zero(2 * n, 2 * n);
  swap.topRightCorner(n, n) = identity(n);
  swap.bottomLeftCorner(n, n) = identity(n);
  nd.particle_hole = {swap};
  nd.pairing = swap;
  if (in.S) {
    Matrix c = Matrix::Zero(2 * n, 2 * n);
    c.topRightCorner(n, n) = *in.S;
    c.bottomLeftCorner(n, n) = in.S->conjugate();
    nd.C_twist = AntiUnitaryOp{c};
  }
  nd.majorana = majorana_map(n);
  out.nambu = std::move(nd);
  return out;
}

/// Real-linear constraints cutting out the compatible Hamiltonians of a setting
/// (on V for hilbert kind, on W for nambu kind).
inline std::vector<RealLinearMap> hamiltonian_constraints(const SymmetrySetting& s) {
  std::vector<RealLinearMap> out;
  out.push_back([](const Matrix& h) -> Matrix { return h - h.adjoint(); });
  if (s.kind == SpaceKind::Hilbert) {
    for (const auto& g : s.g0.generators) out.push_back([g](const Matrix& h) -> Matrix { return commutator(g, h); });
    if (s.T) {
      const AntiUnitaryOp t = *s.T;
      out.push_back([t](const Matrix& h) -> Matrix { return conjugate_by(t, h) - h; });
    }
    return out;
  }
  const NambuData nd = s.nambu ? *s.nambu : *build_nambu(s).nambu;
  const AntiUnitaryOp c = nd.particle_hole;
  out.push_back([c](const Matrix& h) -> Matrix { return conjugate_by(c, h) + h; });
  for (const auto& g : nd.generators) out.push_back([g](const Matrix& h) -> Matrix { return commutator(g, h); });
  for (const auto& op : {nd.T, nd.C_twist})
    if (op) {
      const AntiUnitaryOp a = *op;
      out.push_back([a](const Matrix& h) -> Matrix { return conjugate_by(a, h) - h; });
    }
  return out;
}

inline double constraint_residual(const SymmetrySetting& s, const Matrix& h) {
  double worst = 0.0;
  for (const auto& f : hamiltonian_constraints(s)) worst = std::max(worst, f(h).norm() / scale_of(h));
  return worst;
}

struct ReportEntry {
  std::vector<Index> labels;  // two labels for a swapped pair
  Index d = 1;
  Index m = 1;
  ClassLabel label;
  std::optional<int> eps_T, eps_alpha, eps_beta;
};

struct ClassificationReport {
  SpaceKind kind = SpaceKind::Hilbert;
  bool tenfold = false;
  Index dim = 0;
  std::string pattern;  // tenfold: which decision-table row fired
  std::vector<ReportEntry> entries;
};

inline ClassificationReport classify_threefold(const SymmetrySetting& s) {
  validate_setting(s);
  RngStream rng(s.seed);
  const auto blocks = isotypic_decompose(s.g0, rng, s.tol);
  ClassificationReport report;
  report.kind = SpaceKind::Hilbert;
  report.dim = s.dim_V;
  std::vector<Index> partner(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) partner[i] = static_cast<Index>(i);
  if (s.T) partner = sector_action(*s.T, blocks, std::max(s.tol.input, 1e-8));
  const std::optional<int> eps_t = s.T ? std::optional<int>(parity(*s.T, s.tol.input)) : std::nullopt;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const auto j = static_cast<std::size_t>(partner[i]);
    if (j < i) continue;
    ReportEntry e;
    e.d = b.irrep_dim;
    e.m = b.multiplicity;
    e.eps_T = eps_t;
    e.labels.push_back(b.label);
    if (!s.T || j != i) {
      if (j != i) e.labels.push_back(blocks[j].label);
      e.label = ClassLabel::make(Family::A, b.multiplicity);
    } else {
      const auto tr = transfer_T(b, *s.T, std::max(s.tol.input, 1e-8));
      e.eps_alpha = tr.eps_alpha;
      e.eps_beta = tr.eps_beta;
      e.label = ClassLabel::make(tr.eps_alpha == 1 ? Family::AI : Family::AII, b.multiplicity);
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

namespace detail {

inline bool all_scalar(const GroupAction& g, double tol) {
  for (const auto& x : g.generators) {
    const Complex c = x.trace() / static_cast<double>(g.dim);
    if ((x - c * identity(g.dim)).norm() > tol * scale_of(x)) return false;
  }
  return true;
}

inline bool acts_trivially(const GroupAction& g, double tol) {
  if (is_trivial(g)) return true;
  if (!all_scalar(g, tol)) return false;
  for (const auto& x : g.generators) {
    const Complex c = x.trace() / static_cast<double>(g.dim);
    const bool ok = g.mode == GroupMode::FiniteGroup ? std::abs(std::abs(c.real()) - 1.0) <= tol && std::abs(c.imag()) <= tol
                                                     : std::abs(c) <= tol;
    if (!ok) return false;
  }
  return true;
}

/// dim of {psi : rho(g)^t psi rho(g) = psi} (group) or {rho(X)^t psi + psi rho(X) = 0} (algebra),
/// and whether the solution is skew.
inline std::pair<Index, bool> invariant_pairings(const GroupAction& action, const IsotypicBlock& block, double tol) {
  const Index d = block.irrep_dim;
  const bool algebra = action.mode != GroupMode::FiniteGroup;
  std::vector<RealLinearMap> constraints;
  Matrix stacked(0, d * d);
  for (const auto& g : action.generators) {
    const Matrix r = block.irrep(g);
    // vec(r^t psi r -/+ psi) = (r^t (x) r^t) vec(psi) ...
    Matrix op = algebra ? Matrix(kron(identity(d), r.transpose()) + kron(r.transpose(), identity(d)))
                        : Matrix(kron(r.transpose(), r.transpose()) - identity(d * d));
    Matrix grown(stacked.rows() + op.rows(), d * d);
    grown << stacked, op;
    stacked = grown;
  }
  const Matrix kernel = nullspace_below(stacked, tol * scale_of(stacked));
  if (kernel.cols() != 1) return {kernel.cols(), false};
  const Matrix psi = unvec(kernel.col(0), d, d);
  return {1, is_skew(psi, 1e-6)};
}

}  // namespace detail

/// Tenfold classification in the Nambu setting, for the configurations of
/// the decision table. Anything else is UnsupportedConfiguration.
inline ClassificationReport classify_tenfold(const SymmetrySetting& input) {
  validate_setting(input);
  const SymmetrySetting s = input.nambu ? input : build_nambu(input);
  const double tol = std::max(s.tol.input, 1e-10);
  const Index n = s.dim_V;
  ClassificationReport report;
  report.kind = SpaceKind::Nambu;
  report.tenfold = true;
  report.dim = n;
  const std::optional<int> eps_t = s.T ? std::optional<int>(parity(*s.T, s.tol.input)) : std::nullopt;

  auto single = [&](ClassLabel label, Index d, Index m, std::string pattern) {
    ReportEntry e;
    e.labels = {0};
    e.d = d;
    e.m = m;
    e.label = label;
    e.eps_T = eps_t;
    report.pattern = std::move(pattern);
    report.entries.push_back(e);
    return report;
  };

  std::ostringstream diag;
  const bool trivial = detail::acts_trivially(s.g0, tol);
  diag << "trivial-G0=" << (trivial ? "yes" : "no");
  if (trivial) {
    if (!s.S && !s.T) return single(ClassLabel::make(Family::D, n), 1, n, "no symmetries");
    if (!s.S && eps_t == -1) return single(ClassLabel::make(Family::DIII, n), 1, n, "T only, eps_T = -1");
    diag << " (needs no S and either no T or eps_T = -1; got S=" << (s.S ? "yes" : "no")
         << " eps_T=" << (eps_t ? std::to_string(*eps_t) : "none") << ")";
  }

  const bool charge = !trivial && detail::all_scalar(s.g0, tol);
  diag << "; u1-charge=" << (charge ? "yes" : "no");
  if (charge) {
    if (!s.S) {
      SymmetrySetting h = input;
      h.kind = SpaceKind::Hilbert;
      h.nambu.reset();
      ClassificationReport r = classify_threefold(h);
      r.tenfold = true;
      r.pattern = "U1 charge without particle-hole: threefold fallback";
      return r;
    }
    const Index p = static_cast<Index>(std::llround((identity(n) + *s.S).trace().real() / 2.0));
    const Index q = n - p;
    if (!s.T) return single(ClassLabel::make(Family::AIII, p, q), 1, n, "U1 charge + C");
    if (eps_t == 1) return single(ClassLabel::make(Family::BDI, p, q), 1, n, "U1 charge + C + T(+1)");
    return single(ClassLabel::make(Family::CII, p, q), 1, n, "U1 charge + C + T(-1)");
  }

  if (!trivial) {
    RngStream rng(s.seed);
    const auto blocks = isotypic_decompose(s.g0, rng, s.tol);
    bool spin = false;
    if (blocks.size() == 1 && blocks[0].irrep_dim == 2) {
      const Index comm = static_cast<Index>(commutant_basis(s.g0, s.tol.input).size());
      const auto [count, skew] = detail::invariant_pairings(s.g0, blocks[0], s.tol.input);
      spin = comm == blocks[0].multiplicity * blocks[0].multiplicity && count == 1 && skew;
      diag << "; spin-half=" << (spin ? "yes" : "no") << " (commutant " << comm << ", invariant pairings " << count
           << (skew ? " skew" : "") << ")";
    } else {
      diag << "; spin-half=no (" << blocks.size() << " sectors, d=" << blocks[0].irrep_dim << ")";
    }
    if (spin) {
      const Index m = blocks[0].multiplicity;
      if (s.S) {
        diag << " (particle-hole twist not supported with spin-half G0)";
      } else if (!s.T) {
        return single(ClassLabel::make(Family::C, m), 2, m, "spin-half G0");
      } else {
        const auto tr = transfer_T(blocks[0], *s.T, std::max(s.tol.input, 1e-8));
        if (tr.eps_alpha == 1) {
          auto r = single(ClassLabel::make(Family::CI, m), 2, m, "spin-half G0 + T(-1)");
          r.entries[0].eps_alpha = tr.eps_alpha;
          r.entries[0].eps_beta = tr.eps_beta;
          return r;
        }
        diag << " (T with eps_alpha = -1 not in the table)";
      }
    }
  }
  fail(ErrorKind::UnsupportedConfiguration, "no decision-table row matched: " + diag.str());
}

/// Threefold in Dyson's setting; tenfold when the setting is nambu or carries S.
inline ClassificationReport classify(const SymmetrySetting& s) {
  if (s.kind == SpaceKind::Nambu || s.S) return classify_tenfold(s);
  return classify_threefold(s);
}

/// The reference setting realizing a label.
inline SymmetrySetting canonical_setting(const ClassLabel& label) {
  SymmetrySetting s;
  const Index n = label.n;
  switch (label.family) {
    case Family::A:
    case Family::AI:
    case Family::AII:
      s.dim_V = n;
      s.g0 = trivial_action(n);
      if (label.family == Family::AI) s.T = AntiUnitaryOp{identity(n)};
      if (label.family == Family::AII) s.T = AntiUnitaryOp{symplectic_form(n)};
      return s;
    case Family::D:
    case Family::DIII:
      s.kind = SpaceKind::Nambu;
      s.dim_V = n;
      s.g0 = trivial_action(n);
      if (label.family == Family::DIII) {
        if (n % 2 != 0) fail(ErrorKind::InputShape, "canonical DIII setting needs even N");
        s.T = AntiUnitaryOp{symplectic_form(n)};
      }
      return build_nambu(s);
    case Family::C:
    case Family::CI:
      s.kind = SpaceKind::Nambu;
      s.dim_V = 2 * n;
      s.g0 = spin_half_action(2 * n);
      if (label.family == Family::CI) s.T = AntiUnitaryOp{kron(identity(n), kI * pauli::y())};
      return build_nambu(s);
    case Family::AIII:
    case Family::BDI:
    case Family::CII: {
      const Index p = label.p, q = label.q;
      s.kind = SpaceKind::Nambu;
      s.dim_V = p + q;
      s.g0 = charge_action(p + q);
      s.S = grading(p, q);
      if (label.family == Family::BDI) s.T = AntiUnitaryOp{identity(p + q)};
      if (label.family == Family::CII) s.T = AntiUnitaryOp{block_diag(symplectic_form(p), symplectic_form(q))};
      return build_nambu(s);
    }
  }
  return s;
}

}  // namespace tenfold
