#pragma once

// Named invariant suites behind `tenfold verify` and `tenfold fock-verify`.
// Thresholds are base values multiplied by tol.input / default tol.input, so
// TENFOLD_TOLERANCE=0 turns every non-exact check into a failure.

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "tenfold/classifier.hpp"
#include "tenfold/ensembles.hpp"
#include "tenfold/fock.hpp"
#include "tenfold/symmetric_space.hpp"

namespace tenfold {

enum class VerifyLevel { Fast, Full };

struct CheckResult {
  std::string id;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::vector<std::string> failed_ids() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.id);
    return out;
  }

  void add(std::string id, double value, double threshold) {
    checks.push_back({std::move(id), value <= threshold, value, threshold});
  }
  void add_flag(std::string id, bool ok) { checks.push_back({std::move(id), ok, ok ? 0.0 : 1.0, 0.0}); }
  void append(const VerifyReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

inline std::string format_check(const CheckResult& c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, " value=%.3e threshold=%.3e", c.value, c.threshold);
  return std::string(c.pass ? "PASS " : "FAIL ") + c.id + buf;
}

namespace detail {

inline double root_scale(const Tolerances& tol) { return tol.input / Tolerances{}.input; }

inline bool needs_pairing(Family f) { return !(f == Family::A || f == Family::AI || f == Family::AII); }

inline double pairing_defect(const RealVector& e) {
  double worst = 0.0;
  for (Index i = 0; i < e.size(); ++i) worst = std::max(worst, std::abs(e(i) + e(e.size() - 1 - i)));
  return worst;
}

inline bool has_canonical_setting(const ClassLabel& l) { return !(l.family == Family::DIII && l.n % 2 != 0); }

}  // namespace detail

/// Ensemble, symmetric-space and (at full level) closure checks for one label.
inline VerifyReport verify_class(const ClassLabel& l, VerifyLevel level, const Tolerances& tol, RngStream& rng,
                                 int samples = 20) {
  const double k = detail::root_scale(tol);
  const std::string name = l.to_string();
  VerifyReport r;

  double structure = 0.0, pairing = 0.0, embed = 0.0;
  bool zero_modes = true;
  const bool canonical = detail::has_canonical_setting(l);
  const SymmetrySetting setting = canonical ? canonical_setting(l) : SymmetrySetting{};
  for (int i = 0; i < samples; ++i) {
    const Matrix h = sample_gaussian({l}, rng);
    structure = std::max(structure, structure_residual(l, h));
    const RealVector e = eigvals_hermitian(h);
    if (detail::needs_pairing(l.family)) pairing = std::max(pairing, detail::pairing_defect(e));
    if (l.chiral()) {
      Index zeros = 0;
      for (Index j = 0; j < e.size(); ++j)
        if (std::abs(e(j)) < 1e-10) ++zeros;
      zero_modes = zero_modes && zeros == std::abs(l.p - l.q);
    }
    if (canonical) embed = std::max(embed, constraint_residual(setting, embed_in_setting(l, h)));
  }
  r.add(name + " gaussian structure", structure, 1e-12 * k);
  if (detail::needs_pairing(l.family)) r.add(name + " spectral pairing", pairing, 1e-10 * k);
  if (l.chiral()) r.add_flag(name + " zero modes", zero_modes);
  if (canonical) {
    r.add(name + " embedding", embed, 1e-12 * k);
    const auto report = classify(setting);
    r.add_flag(name + " round trip", report.entries.size() == 1 && report.entries[0].label == l);
  }

  const CartanPair pair = involution(l);
  double member = 0.0;
  for (int i = 0; i < 5; ++i) member = std::max(member, membership_residual(sample_circular({l, 1.0, EnsembleKind::Circular}, rng), pair));
  r.add(name + " circular membership", member, 1e-10 * k);

  const TangentDecomposition t = tangent_split(pair);
  const BracketResiduals br = bracket_residuals(pair, t);
  r.add(name + " brackets", std::max({br.kk, br.kp, br.pp}), 1e-10 * k);
  r.add_flag(name + " tangent dimension", static_cast<Index>(t.p_basis.size()) == compatible_space(l).dim_p);
  if (level == VerifyLevel::Full) {
    const ClosureResult c = closure_check(t.p_basis, 1e-9 * k);
    r.checks.push_back({name + " closure", c.pass, c.max_residual, 1e-9 * k});
  }
  return r;
}

/// Small representatives of all ten classes.
inline std::vector<ClassLabel> verify_labels() {
  return {ClassLabel::make(Family::A, 3),    ClassLabel::make(Family::AI, 3),      ClassLabel::make(Family::AII, 4),
          ClassLabel::make(Family::C, 2),    ClassLabel::make(Family::CI, 2),      ClassLabel::make(Family::D, 3),
          ClassLabel::make(Family::DIII, 4), ClassLabel::make(Family::AIII, 2, 1), ClassLabel::make(Family::BDI, 2, 3),
          ClassLabel::make(Family::CII, 2, 2)};
}

/// CAR, particle-hole and covering checks at N = 1..max_n, each aggregated
/// over N into one named result.
inline VerifyReport verify_fock(Index max_n, const Tolerances& tol, RngStream& rng, int covering_trials = 5) {
  const double k = detail::root_scale(tol);
  double car = 0.0, c2 = 0.0, ct = 0.0, cg = 0.0, gen = 0.0, orth = 0.0, det = 0.0, transfer = 0.0;
  bool kernel = true;
  for (Index n = 1; n <= max_n; ++n) {
    const FockSpace f = build_fock(n);
    car = std::max(car, car_residual(f));

    const AntiUnitaryOp c = particle_hole(f);
    const Matrix sq = c.u * c.u.conjugate();
    for (int lvl = 0; lvl <= n; ++lvl) {
      const double sign = (lvl * (n - lvl)) % 2 ? -1.0 : 1.0;
      const Matrix p = f.level_projector(lvl);
      c2 = std::max(c2, (sq * p - sign * p).norm());
    }

    // T = lift(O) o conj with O in SO(n) fixes Omega; g with det g = 1 fixes Omega
    const AntiUnitaryOp t{lift_unitary(f, haar_special_orthogonal(n, rng))};
    ct = std::max(ct, (compose(c, t) - compose(t, c)).norm());
    Matrix su = haar_unitary(n, rng);
    su *= std::pow(su.determinant(), -1.0 / static_cast<double>(n));
    const Matrix g = lift_unitary(f, su);
    cg = std::max(cg, (c.u * g.conjugate() - g * c.u).norm());

    for (int trial = 0; trial < covering_trials; ++trial) {
      const Matrix a = ginibre(n, n, rng), b = ginibre(n, n, rng);
      const Matrix w = (a + a.adjoint()) / 2.0, z = (b - b.transpose()) / 2.0;
      const CoveringResult cov = covering_check(f, lift_one_body(f, w, z), w, z);
      gen = std::max(gen, cov.generator_residual);
      orth = std::max(orth, cov.orthogonality);
      det = std::max(det, std::abs(cov.det - 1.0));
      kernel = kernel && cov.kernel_exact;
    }

    const Matrix v = haar_unitary(n, rng);
    const Matrix s = v * grading(n - n / 2, n / 2) * v.adjoint();
    transfer = std::max(transfer, twisted_ph_transfer_check(f, s, 1.0).worst);
  }
  VerifyReport r;
  r.add("CAR", car, 1e-12 * k);
  r.add("C2 sign law", c2, 0.0);
  r.add("CT=TC", ct, 1e-12 * k);
  r.add("Cg=gC", cg, 1e-12 * k);
  r.add("covering generator", gen, 1e-9 * k);
  r.add("covering orthogonality", std::max(orth, det), 1e-9 * k);
  r.add_flag("covering two-to-one", kernel);
  r.add("twisted transfer sign", transfer, 1e-10 * k);
  return r;
}

/// Checks on a parsed spec, followed by the class suites of its labels.
inline VerifyReport verify_setting(const SymmetrySetting& s, VerifyLevel level) {
  const double k = detail::root_scale(s.tol);
  const ClassificationReport report = classify(s);
  VerifyReport r;

  const Index n = s.kind == SpaceKind::Nambu ? 2 * s.dim_V : s.dim_V;
  const auto space = real_solution_space(n, n, hamiltonian_constraints(s));
  Index expected = 0;
  for (const auto& e : report.entries) expected += compatible_space(e.label).dim_p;
  r.add_flag("hamiltonian dimension", static_cast<Index>(space.size()) == expected);

  double residual = 0.0;
  for (const auto& h : space) residual = std::max(residual, constraint_residual(s, h));
  r.add("compatible basis", residual, 1e-10 * k);

  bool parities = true;
  for (const auto& e : report.entries)
    if (e.eps_T && e.eps_alpha && e.eps_beta) parities = parities && *e.eps_alpha * *e.eps_beta == *e.eps_T;
  r.add_flag("parity transfer", parities);

  RngStream rng(s.seed);
  std::set<std::string> seen;
  for (const auto& e : report.entries) {
    if (!seen.insert(e.label.to_string()).second) continue;
    r.append(verify_class(e.label, level, s.tol, rng));
  }
  if (level == VerifyLevel::Full) r.append(verify_fock(std::min<Index>(s.dim_V, 6), s.tol, rng, 3));
  return r;
}

inline VerifyReport verify_all_classes(VerifyLevel level, const Tolerances& tol, std::uint64_t seed = 0) {
  RngStream rng(seed);
  VerifyReport r;
  for (const auto& l : verify_labels()) r.append(verify_class(l, level, tol, rng));
  if (level == VerifyLevel::Full) r.append(verify_fock(6, tol, rng));
  return r;
}

}  // namespace tenfold
