#pragma once

// Gaussian and circular ensembles for the ten classes, and spectral statistics.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tenfold/class_label.hpp"
#include "tenfold/classifier.hpp"
#include "tenfold/random.hpp"
#include "tenfold/symmetric_space.hpp"

namespace tenfold {

enum class EnsembleKind { Gaussian, Circular };

inline constexpr std::string_view to_string(EnsembleKind k) { return k == EnsembleKind::Gaussian ? "gaussian" : "circular"; }

struct EnsembleSpec {
  ClassLabel label;
  double sigma = 1.0;
  EnsembleKind kind = EnsembleKind::Gaussian;
};

namespace detail {

/// Complex entries with real and imaginary parts of variance s^2.
inline Matrix complex_block(Index rows, Index cols, double s, RngStream& rng) {
  return (std::sqrt(2.0) * s) * ginibre(rows, cols, rng);
}

inline Matrix real_block(Index rows, Index cols, double s, RngStream& rng) {
  return (s * real_ginibre(rows, cols, rng)).cast<Complex>();
}

inline Matrix herm(const Matrix& m) { return (m + m.adjoint()) / 2.0; }
inline Matrix sym(const Matrix& m) { return (m + m.transpose()) / 2.0; }
inline Matrix skew(const Matrix& m) { return (m - m.transpose()) / 2.0; }

inline Matrix bdg(const Matrix& w, const Matrix& z) {
  const Index n = w.rows();
  Matrix h(2 * n, 2 * n);
  h << w, z, z.adjoint(), -w.transpose();
  return h;
}

inline Matrix off_diagonal(const Matrix& z) {
  const Index p = z.rows(), q = z.cols();
  Matrix h = Matrix::Zero(p + q, p + q);
  h.topRightCorner(p, q) = z;
  h.bottomLeftCorner(q, p) = z.adjoint();
  return h;
}

}  // namespace detail

/// Draw from exp(-Tr H^2 / 2 sigma^2) on the Hamiltonian space of the class.
/// Each matrix is an exact orthogonal projection of a Gaussian matrix, so the
/// structure holds by construction. Blocks that appear twice in Tr H^2 (all
/// Nambu and chiral forms) get component variance sigma^2 / 2.
inline Matrix sample_gaussian(const EnsembleSpec& spec, RngStream& rng) {
  using namespace detail;
  if (spec.kind != EnsembleKind::Gaussian) fail(ErrorKind::InputShape, "sample_gaussian needs kind = gaussian");
  if (!(spec.sigma > 0.0)) fail(ErrorKind::InputShape, "sigma must be > 0");
  const ClassLabel& l = spec.label;
  const double s = spec.sigma, s2 = spec.sigma / std::sqrt(2.0);
  const Index n = l.n;
  switch (l.family) {
    case Family::A: return herm(complex_block(n, n, s, rng));
    case Family::AI: return herm(real_block(n, n, s, rng));
    case Family::AII: {
      if (n % 2 != 0) fail(ErrorKind::InputShape, "AII needs even N");
      const Matrix a = herm(complex_block(n, n, s, rng));
      const Matrix j = symplectic_form(n);
      return (a + j * a.conjugate() * j.transpose()) / 2.0;
    }
    case Family::C: return bdg(herm(complex_block(n, n, s2, rng)), sym(complex_block(n, n, s2, rng)));
    case Family::D: return bdg(herm(complex_block(n, n, s2, rng)), skew(complex_block(n, n, s2, rng)));
    case Family::CI: {
      const Matrix z = sym(complex_block(n, n, s2, rng));
      Matrix h = Matrix::Zero(2 * n, 2 * n);
      h.topRightCorner(n, n) = z;
      h.bottomLeftCorner(n, n) = z.conjugate();
      return h;
    }
    case Family::DIII: return off_diagonal(skew(complex_block(n, n, s2, rng)));
    case Family::AIII: return off_diagonal(complex_block(l.p, l.q, s2, rng));
    case Family::BDI: return off_diagonal(real_block(l.p, l.q, s2, rng));
    case Family::CII: {
      const Matrix g = complex_block(l.p, l.q, s2, rng);
      const Matrix jp = symplectic_form(l.p), jq = symplectic_form(l.q);
      return off_diagonal((g + jp * g.conjugate() * jq.transpose()) / 2.0);
    }
  }
  fail(ErrorKind::UnsupportedFamily, "unknown family");
}

/// Residual of the defining relations of the sampled form.
inline double structure_residual(const ClassLabel& l, const Matrix& h) {
  if (h.rows() != l.matrix_size() || h.cols() != l.matrix_size()) return std::numeric_limits<double>::infinity();
  double r = (h - h.adjoint()).norm();
  const Index n = l.n;
  switch (l.family) {
    case Family::A: break;
    case Family::AI: r += h.imag().norm(); break;
    case Family::AII: {
      const Matrix j = symplectic_form(n);
      r += (j * h.conjugate() * j.transpose() - h).norm();
      break;
    }
    case Family::C:
    case Family::D: {
      const Matrix w = h.topLeftCorner(n, n), z = h.topRightCorner(n, n);
      r += (h.bottomRightCorner(n, n) + w.transpose()).norm();
      r += (l.family == Family::C ? (z - z.transpose()) : Matrix(z + z.transpose())).norm();
      break;
    }
    case Family::CI:
    case Family::DIII: {
      const Matrix z = h.topRightCorner(n, n);
      r += h.topLeftCorner(n, n).norm() + h.bottomRightCorner(n, n).norm();
      r += (l.family == Family::CI ? (z - z.transpose()) : Matrix(z + z.transpose())).norm();
      break;
    }
    case Family::AIII:
    case Family::BDI:
    case Family::CII: {
      r += h.topLeftCorner(l.p, l.p).norm() + h.bottomRightCorner(l.q, l.q).norm();
      const Matrix z = h.topRightCorner(l.p, l.q);
      if (l.family == Family::BDI) r += z.imag().norm();
      if (l.family == Family::CII) r += (symplectic_form(l.p) * z.conjugate() * symplectic_form(l.q).transpose() - z).norm();
      break;
    }
  }
  return r;
}

/// Map a Gaussian sample into the coordinates of canonical_setting(label):
/// V for A/AI/AII, W = V (+) V* otherwise. Unitary on matrices, so spectra
/// are preserved (C and CI double every level through the spin factor).
inline Matrix embed_in_setting(const ClassLabel& l, const Matrix& h) {
  const Index n = l.n;
  const Matrix eps = kI * pauli::y();
  auto spin_c = [&](const Matrix& w, const Matrix& z) {
    return detail::bdg(kron(w, identity(2)), kron(z, eps));
  };
  switch (l.family) {
    case Family::A:
    case Family::AI:
    case Family::AII:
    case Family::D: return h;
    case Family::C: return spin_c(h.topLeftCorner(n, n), h.topRightCorner(n, n));
    case Family::CI: {
      const Matrix z = h.topRightCorner(n, n);
      return spin_c(z.real().cast<Complex>(), z.imag().cast<Complex>());
    }
    case Family::DIII: {
      const Matrix j = symplectic_form(n), i = identity(n);
      Matrix y(2 * n, 2 * n);
      y << kI * j, i, i, -kI * j;
      y /= std::sqrt(2.0);
      return y * h * y.adjoint();
    }
    case Family::AIII:
    case Family::BDI:
    case Family::CII: return block_diag(h, -h.transpose());
  }
  return h;
}

/// x = u tau(u^-1) for u Haar in U; group types return u.
inline Matrix sample_circular(const EnsembleSpec& spec, RngStream& rng) {
  if (spec.kind != EnsembleKind::Circular) fail(ErrorKind::InputShape, "sample_circular needs kind = circular");
  const CartanPair pair = involution(spec.label);
  return cartan_embed(haar_in_group(pair, rng), pair);
}

inline Matrix sample(const EnsembleSpec& spec, RngStream& rng) {
  return spec.kind == EnsembleKind::Gaussian ? sample_gaussian(spec, rng) : sample_circular(spec, rng);
}

/// Neumaier-compensated running sums for mean and standard error.
class MeanAccumulator {
 public:
  void add(double x) {
    add_to(sum_, comp_, x);
    add_to(sq_, sq_comp_, x * x);
    ++count_;
  }
  void merge(const MeanAccumulator& o) {
    add_to(sum_, comp_, o.sum_ + o.comp_);
    add_to(sq_, sq_comp_, o.sq_ + o.sq_comp_);
    count_ += o.count_;
  }
  std::size_t count() const { return count_; }
  double mean() const { return count_ ? (sum_ + comp_) / static_cast<double>(count_) : 0.0; }
  double variance() const {
    if (count_ < 2) return 0.0;
    const double c = static_cast<double>(count_);
    const double m = mean();
    return std::max(0.0, ((sq_ + sq_comp_) - c * m * m) / (c - 1.0));
  }
  double std_error() const { return count_ ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0; }

 private:
  static void add_to(double& sum, double& comp, double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double sum_ = 0.0, comp_ = 0.0, sq_ = 0.0, sq_comp_ = 0.0;
  std::size_t count_ = 0;
};

struct SpectralStats {
  std::vector<double> ratios;
  double mean = 0.0;
  double std_error = 0.0;
  Index dropped = 0;
};

/// r_i = min(s_i, s_i+1) / max(s_i, s_i+1) over consecutive spacings of an
/// ascending list; spacings below 1e-12 * range are dropped and counted.
inline SpectralStats spacing_ratios(const std::vector<double>& values) {
  if (values.size() < 3) fail(ErrorKind::InputShape, "spacing_ratios needs at least 3 values");
  if (!std::is_sorted(values.begin(), values.end())) fail(ErrorKind::InputShape, "spacing_ratios needs ascending values");
  const double range = values.back() - values.front();
  SpectralStats out;
  std::vector<double> s;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    if (d < 1e-12 * range || d == 0.0)
      ++out.dropped;
    else
      s.push_back(d);
  }
  MeanAccumulator acc;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double r = std::min(s[i], s[i - 1]) / std::max(s[i], s[i - 1]);
    out.ratios.push_back(r);
    acc.add(r);
  }
  out.mean = acc.mean();
  out.std_error = acc.std_error();
  return out;
}

inline std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> centers;
  std::vector<double> density;
  double width() const { return centers.empty() ? 0.0 : (hi - lo) / static_cast<double>(centers.size()); }
};

/// Area-normalized histogram over [-max|E|, max|E|].
inline Histogram spectral_density(const std::vector<std::vector<double>>& spectra, Index bins) {
  if (bins < 1) fail(ErrorKind::InputShape, "bins must be >= 1");
  double top = 0.0;
  std::size_t total = 0;
  for (const auto& sp : spectra)
    for (double e : sp) {
      top = std::max(top, std::abs(e));
      ++total;
    }
  if (total == 0) fail(ErrorKind::InputShape, "spectral_density needs a non-empty spectrum");
  if (top == 0.0) top = 1.0;
  Histogram h;
  h.lo = -top;
  h.hi = top;
  const auto nb = static_cast<std::size_t>(bins);
  const double w = 2.0 * top / static_cast<double>(bins);
  std::vector<std::size_t> counts(nb, 0);
  for (const auto& sp : spectra)
    for (double e : sp) {
      auto k = static_cast<std::size_t>(std::floor((e - h.lo) / w));
      counts[std::min(k, nb - 1)]++;
    }
  for (std::size_t k = 0; k < nb; ++k) {
    h.centers.push_back(h.lo + (static_cast<double>(k) + 0.5) * w);
    h.density.push_back(static_cast<double>(counts[k]) / (static_cast<double>(total) * w));
  }
  return h;
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Density of levels in [-width/2, width/2], per spectrum, averaged over
/// spectra; the error is the standard error over spectra.
inline Estimate density_near_zero(const std::vector<std::vector<double>>& spectra, double width) {
  MeanAccumulator acc;
  for (const auto& sp : spectra) {
    std::size_t c = 0;
    for (double e : sp)
      if (std::abs(e) < width / 2.0) ++c;
    acc.add(static_cast<double>(c) / (static_cast<double>(sp.size()) * width));
  }
  return {acc.mean(), acc.std_error()};
}

}  // namespace tenfold
