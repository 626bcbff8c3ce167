#include <catch_amalgamated.hpp>

#include "tenfold/symmetric_space.hpp"

using namespace tenfold;

namespace {

std::vector<ClassLabel> small_labels() {
  return {ClassLabel::make(Family::A, 3),       ClassLabel::make(Family::AI, 3),      ClassLabel::make(Family::AII, 4),
          ClassLabel::make(Family::C, 2),       ClassLabel::make(Family::CI, 2),      ClassLabel::make(Family::D, 2),
          ClassLabel::make(Family::DIII, 3),    ClassLabel::make(Family::AIII, 2, 1), ClassLabel::make(Family::BDI, 2, 3),
          ClassLabel::make(Family::CII, 2, 2)};
}

}  // namespace

TEST_CASE("involution examples", "[symspace]") {
  const auto ai = involution(ClassLabel::make(Family::AI, 3));
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1.0, -1.0, 1.0;
  CHECK((ai.tau(d) - d).norm() == 0.0);

  const auto aii = involution(ClassLabel::make(Family::AII, 4));
  const Matrix j = symplectic_form(4);
  CHECK((aii.tau(j) - j).norm() < 1e-15);

  const auto aiii = involution(ClassLabel::make(Family::AIII, 1, 1));
  CHECK((aiii.tau(pauli::x()) + pauli::x()).norm() < 1e-15);
}

TEST_CASE("tau is an involutive automorphism", "[symspace]") {
  RngStream rng(3);
  for (const auto& l : small_labels()) {
    const auto pair = involution(l);
    const bool doubled = is_group_type(l.family);
    auto draw = [&] {
      const Matrix a = haar_in_group(pair, rng);
      return doubled ? Matrix(block_diag(a, haar_in_group(pair, rng))) : a;
    };
    const Matrix a = draw(), b = draw();
    CHECK((pair.tau(pair.tau(a)) - a).norm() < 1e-12);
    CHECK((pair.tau(a * b) - pair.tau(a) * pair.tau(b)).norm() < 1e-12);
    if (!doubled) CHECK(pair.group_defect(pair.tau(a)) < 1e-10);
  }
}

TEST_CASE("Haar samplers land in U", "[symspace]") {
  RngStream rng(5);
  for (const auto& l : small_labels()) {
    const auto pair = involution(l);
    CHECK(pair.group_defect(haar_in_group(pair, rng)) < 1e-10);
  }
  const Matrix o = split_symplectic_permutation(4, 2);
  CHECK((o * symplectic_form(6) * o.transpose() - split_symplectic_form(4, 2)).norm() == 0.0);
}

TEST_CASE("cartan embedding", "[symspace]") {
  RngStream rng(7);
  for (const auto& l : small_labels()) {
    const auto pair = involution(l);
    CHECK((cartan_embed(identity(pair.size), pair) - identity(pair.size)).norm() < 1e-14);
    const Matrix x = cartan_embed(haar_in_group(pair, rng), pair);
    CHECK(membership_residual(x, pair) < 1e-10);
  }
  const auto ai = involution(ClassLabel::make(Family::AI, 4));
  const Matrix u = haar_unitary(4, rng);
  const Matrix x = cartan_embed(u, ai);
  CHECK((x - u * u.transpose()).norm() < 1e-14);
  CHECK((x - x.transpose()).norm() < 1e-14);
  // right K-invariance, K = O_4
  const Matrix k = haar_orthogonal(4, rng);
  CHECK((cartan_embed(u * k, ai) - x).norm() < 1e-12);

  try {
    cartan_embed(ginibre(4, 4, rng), ai);
    FAIL("expected InputShape");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InputShape);
  }
  // a unitary that is not orthogonal is outside U for class D
  CHECK_THROWS_AS(cartan_embed(haar_unitary(4, rng), involution(ClassLabel::make(Family::D, 2))), Error);
}

TEST_CASE("geodesic inversion", "[symspace]") {
  RngStream rng(11);
  const auto ai = involution(ClassLabel::make(Family::AI, 4));
  const Matrix x = cartan_embed(haar_unitary(4, rng), ai);
  const Matrix y = cartan_embed(haar_unitary(4, rng), ai);
  CHECK((geodesic_inversion(x, x, ai) - x).norm() < 1e-12);
  CHECK((geodesic_inversion(identity(4), x, ai) - x.adjoint()).norm() < 1e-12);
  const Matrix sx = geodesic_inversion(y, x, ai);
  CHECK(membership_residual(sx, ai) < 1e-10);
  CHECK((geodesic_inversion(y, sx, ai) - x).norm() < 1e-9);
  CHECK((geodesic_inversion(y, y, ai) - y).norm() < 1e-12);
  try {
    geodesic_inversion(y, haar_unitary(4, rng), ai);
    FAIL("expected NotInM");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInM);
  }
}

TEST_CASE("tangent split examples", "[symspace]") {
  const auto ai = tangent_split(involution(ClassLabel::make(Family::AI, 2)));
  CHECK(ai.k_basis.size() == 1);
  CHECK(ai.p_basis.size() == 3);
  CHECK(ai.algebra_dim == 4);
  for (const auto& p : ai.p_basis) CHECK((p.imag() - p.imag().transpose()).norm() < 1e-12);

  const auto a = tangent_split(involution(ClassLabel::make(Family::A, 2)));
  CHECK(a.p_basis.size() == 4);

  const auto ci = tangent_split(involution(ClassLabel::make(Family::CI, 1)));
  CHECK(ci.k_basis.size() == 1);
  CHECK(ci.p_basis.size() == 2);
}

TEST_CASE("tangent split for all ten classes", "[symspace]") {
  for (const auto& l : small_labels()) {
    INFO(l.to_string());
    const auto pair = involution(l);
    const auto t = tangent_split(pair);
    CHECK(static_cast<Index>(t.k_basis.size() + t.p_basis.size()) == t.algebra_dim);
    CHECK(static_cast<Index>(t.p_basis.size()) == compatible_space(l).dim_p);
    for (const auto& k : t.k_basis) CHECK((pair.dtau(k) - k).norm() < 1e-12);
    for (const auto& p : t.p_basis) CHECK((pair.dtau(p) + p).norm() < 1e-12);
    // orthonormal in the trace form
    for (std::size_t i = 0; i < t.p_basis.size(); ++i)
      for (std::size_t j = 0; j < t.p_basis.size(); ++j)
        CHECK(std::abs(real_inner(t.p_basis[i], t.p_basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
    const auto br = bracket_residuals(pair, t);
    CHECK(br.kk < 1e-10);
    CHECK(br.kp < 1e-10);
    CHECK(br.pp < 1e-10);
    CHECK(closure_check(t.p_basis).pass);
  }
}

TEST_CASE("closure check examples", "[symspace]") {
  // Hermitian 2x2 closes
  std::vector<Matrix> herm;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      Matrix e = Matrix::Zero(2, 2);
      if (i == j) {
        e(i, i) = 1.0;
      } else if (i < j) {
        e(i, j) = e(j, i) = 1.0;
      } else {
        e(i, j) = kI;
        e(j, i) = -kI;
      }
      herm.push_back(e);
    }
  CHECK(closure_check(herm).pass);

  RngStream rng(13);
  const Matrix g1 = ginibre(3, 3, rng), g2 = ginibre(3, 3, rng);
  const auto generic = closure_check({g1 + g1.adjoint(), g2 + g2.adjoint()});
  CHECK_FALSE(generic.pass);
  CHECK(generic.max_residual > 1e-3);
  CHECK_THROWS_AS(closure_check({}), Error);
}

TEST_CASE("metric and twisted conjugation", "[symspace]") {
  RngStream rng(17);
  for (const auto& l : small_labels()) {
    if (is_group_type(l.family)) continue;
    INFO(l.to_string());
    const auto pair = involution(l);
    const auto t = tangent_split(pair);
    const Matrix u = haar_in_group(pair, rng);
    const Matrix x = cartan_embed(u, pair);
    const Matrix tu = pair.tau(u.adjoint());
    // curve u exp(2 s P) tau(u^-1) through x, tangent 2 u P tau(u^-1)
    for (std::size_t i = 0; i < t.p_basis.size(); ++i) {
      const Matrix& p = t.p_basis[i];
      const Matrix xi = 2.0 * u * p * tu;
      const Complex raw = -(x.adjoint() * xi * x.adjoint() * xi).trace();
      CHECK(std::abs(raw.imag()) < 1e-8);
      CHECK(std::abs(metric(x, xi, xi) - 4.0 * p.squaredNorm()) < 1e-8);
      CHECK(metric(x, xi, xi) > 0.0);
    }
    const Matrix v = haar_in_group(pair, rng);
    CHECK(membership_residual(twisted_conjugation(v, x, pair), pair) < 1e-10);

    // rank of the differential of u -> u tau(u^-1) at the identity
    std::vector<Matrix> images;
    const double h = 1e-6;
    for (const auto& k : t.k_basis) images.push_back(k);
    for (const auto& p : t.p_basis) images.push_back(p);
    std::vector<Matrix> diffs;
    for (const auto& z : images) {
      const Matrix g = evolution(kI * z, h);  // exp(h z)
      diffs.push_back((cartan_embed(g, pair, 1e-6) - identity(pair.size)) / h);
    }
    CHECK(static_cast<Index>(real_orthonormalize(diffs, 1e-4).size()) == compatible_space(l).dim_p);
  }
}
