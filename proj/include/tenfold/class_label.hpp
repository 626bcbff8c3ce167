#pragma once

// The ten Cartan families and the symmetric spaces attached to them.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "tenfold/error.hpp"
#include "tenfold/linalg.hpp"

namespace tenfold {

enum class Family { A, AI, AII, C, CI, D, DIII, AIII, BDI, CII };

inline constexpr std::array<Family, 10> kAllFamilies = {Family::A,  Family::AI,   Family::AII,  Family::C,
                                                        Family::CI, Family::D,    Family::DIII, Family::AIII,
                                                        Family::BDI, Family::CII};

inline constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::AI: return "AI";
    case Family::AII: return "AII";
    case Family::C: return "C";
    case Family::CI: return "CI";
    case Family::D: return "D";
    case Family::DIII: return "DIII";
    case Family::AIII: return "AIII";
    case Family::BDI: return "BDI";
    case Family::CII: return "CII";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies)
    if (to_string(f) == name) return f;
  return std::nullopt;
}

inline constexpr bool is_chiral(Family f) { return f == Family::AIII || f == Family::BDI || f == Family::CII; }

/// Classes whose compact space is a group (handled directly on U).
inline constexpr bool is_group_type(Family f) { return f == Family::A || f == Family::C || f == Family::D; }

struct ClassLabel {
  Family family = Family::A;
  Index n = 0;  // non-chiral classes
  Index p = 0;  // chiral classes
  Index q = 0;

  static ClassLabel make(Family f, Index n) {
    if (is_chiral(f)) fail(ErrorKind::InputShape, std::string(tenfold::to_string(f)) + " needs dims p,q");
    if (n < 1) fail(ErrorKind::InputShape, "dimension must be >= 1");
    if (f == Family::AII && n % 2 != 0) fail(ErrorKind::InputShape, "AII needs even N, got " + std::to_string(n));
    return {f, n, 0, 0};
  }

  static ClassLabel make(Family f, Index p, Index q) {
    if (!is_chiral(f)) fail(ErrorKind::InputShape, std::string(tenfold::to_string(f)) + " takes a single dimension N");
    if (p < 0 || q < 0 || p + q < 1) fail(ErrorKind::InputShape, "chiral dims need p, q >= 0 and p + q >= 1");
    if (f == Family::CII && (p % 2 != 0 || q % 2 != 0))
      fail(ErrorKind::InputShape, "CII needs even p and q, got " + std::to_string(p) + "," + std::to_string(q));
    return {f, 0, p, q};
  }

  bool chiral() const { return is_chiral(family); }

  /// Size of the Hamiltonian matrices sampled for this class.
  Index matrix_size() const {
    if (chiral()) return p + q;
    switch (family) {
      case Family::C:
      case Family::CI:
      case Family::D:
      case Family::DIII: return 2 * n;
      default: return n;
    }
  }

  std::string dims_string() const {
    return chiral() ? std::to_string(p) + "," + std::to_string(q) : std::to_string(n);
  }

  std::string space_name() const {
    const auto s = [](Index k) { return std::to_string(k); };
    switch (family) {
      case Family::A: return "U_" + s(n);
      case Family::AI: return "U_" + s(n) + "/O_" + s(n);
      case Family::AII: return "U_" + s(n) + "/USp_" + s(n);
      case Family::C: return "USp_" + s(2 * n);
      case Family::CI: return "USp_" + s(2 * n) + "/U_" + s(n);
      case Family::D: return "SO_" + s(2 * n);
      case Family::DIII: return "SO_" + s(2 * n) + "/U_" + s(n);
      case Family::AIII: return "U_" + s(p + q) + "/(U_" + s(p) + " x U_" + s(q) + ")";
      case Family::BDI: return "O_" + s(p + q) + "/(O_" + s(p) + " x O_" + s(q) + ")";
      case Family::CII: return "USp_" + s(p + q) + "/(USp_" + s(p) + " x USp_" + s(q) + ")";
    }
    return "?";
  }

  std::string to_string() const { return std::string(tenfold::to_string(family)) + "(" + dims_string() + ")"; }

  bool operator==(const ClassLabel&) const = default;
};

struct CompatibleSpace {
  std::string group;
  std::string subgroup;  // "-" for group-type classes
  std::string tangent_form;
  Index dim_p = 0;
};

inline CompatibleSpace compatible_space(const ClassLabel& label) {
  const auto s = [](Index k) { return std::to_string(k); };
  const Index n = label.n, p = label.p, q = label.q;
  switch (label.family) {
    case Family::A: return {"U_" + s(n), "-", "H complex Hermitian", n * n};
    case Family::AI: return {"U_" + s(n), "O_" + s(n), "H real symmetric", n * (n + 1) / 2};
    case Family::AII: return {"U_" + s(n), "USp_" + s(n), "H quaternion self-dual", n * (n - 1) / 2};
    case Family::C: return {"USp_" + s(2 * n), "-", "Z complex symmetric", n * (2 * n + 1)};
    case Family::CI: return {"USp_" + s(2 * n), "U_" + s(n), "Z complex sym., W = 0", n * (n + 1)};
    case Family::D: return {"SO_" + s(2 * n), "-", "Z complex skew", n * (2 * n - 1)};
    case Family::DIII: return {"SO_" + s(2 * n), "U_" + s(n), "Z complex skew, W = 0", n * (n - 1)};
    case Family::AIII:
      return {"U_" + s(p + q), "U_" + s(p) + " x U_" + s(q), "Z complex " + s(p) + " x " + s(q) + ", W = 0", 2 * p * q};
    case Family::BDI:
      return {"O_" + s(p + q), "O_" + s(p) + " x O_" + s(q), "Z real " + s(p) + " x " + s(q) + ", W = 0", p * q};
    case Family::CII:
      return {"USp_" + s(p + q), "USp_" + s(p) + " x USp_" + s(q),
              "Z quaternion " + s(p) + " x " + s(q) + ", W = 0", p * q};
  }
  return {};
}

}  // namespace tenfold
