#pragma once

// Seeded random streams and Haar samplers for the compact classical groups.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "tenfold/linalg.hpp"

namespace tenfold {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream. The engine is mt19937_64 (fully specified by
/// the standard); the uniform and normal transforms are written out here so
/// the output sequence is bit-identical across standard library vendors.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return draws_; }

  /// Independent stream number i, seeded by mix(seed, i).
  RngStream child(std::uint64_t i) const { return RngStream(splitmix64(seed_ ^ splitmix64(i + 0x632be59bd9b4e019ULL))); }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal (Marsaglia polar method, pairs cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Complex normal with E|z|^2 = 1.
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * (1.0 / std::numbers::sqrt2);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Complex Ginibre matrix, entries i.i.d. with E|z|^2 = 1.
inline Matrix ginibre(Index rows, Index cols, RngStream& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

inline RealMatrix real_ginibre(Index rows, Index cols, RngStream& rng) {
  RealMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of diag(R)
/// moved into Q.
inline Matrix haar_unitary(Index n, RngStream& rng) {
  if (n < 1) fail(ErrorKind::InputShape, "haar_unitary: n must be >= 1");
  const Matrix z = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0 ? d / a : Complex(1.0));
  }
  return q;
}

/// Haar-distributed real orthogonal matrix (returned as a complex matrix).
inline Matrix haar_orthogonal(Index n, RngStream& rng) {
  if (n < 1) fail(ErrorKind::InputShape, "haar_orthogonal: n must be >= 1");
  const RealMatrix z = real_ginibre(n, n, rng);
  Eigen::HouseholderQR<RealMatrix> qr(z);
  RealMatrix q = qr.householderQ();
  const RealMatrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q.cast<Complex>();
}

/// Haar on SO(n): a Haar orthogonal matrix with its first column flipped when
/// the determinant is -1.
inline Matrix haar_special_orthogonal(Index n, RngStream& rng) {
  Matrix q = haar_orthogonal(n, rng);
  if (q.real().determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

/// Haar on USp(n) = {u unitary : J conj(u) J^-1 = u}, J the standard symplectic
/// form. Quaternionic Gram-Schmidt of a quaternion-Ginibre matrix: column
/// j + n/2 is the quaternionic partner -J conj(column j).
inline Matrix haar_symplectic(Index n, RngStream& rng) {
  if (n < 2 || n % 2 != 0) fail(ErrorKind::InputShape, "haar_symplectic: n must be even and >= 2");
  const Index h = n / 2;
  const Matrix j = symplectic_form(n);
  Matrix q = Matrix::Zero(n, n);
  for (Index k = 0; k < h; ++k) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index l = 0; l < k; ++l) {
        v -= q.col(l) * (q.col(l).adjoint() * v)(0);
        v -= q.col(l + h) * (q.col(l + h).adjoint() * v)(0);
      }
    }
    v /= v.norm();
    q.col(k) = v;
    q.col(k + h) = -j * v.conjugate();
  }
  return q;
}

}  // namespace tenfold
