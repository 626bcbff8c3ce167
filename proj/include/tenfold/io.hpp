#pragma once

// JSON specification files and matrix serialization. Complex numbers are
// [re, im] pairs throughout.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tenfold/classifier.hpp"
#include "tenfold/error.hpp"

namespace tenfold::io {

using json = nlohmann::json;

/// CLI exit code for a library error.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputShape:
    case ErrorKind::GroupTooLarge:
    case ErrorKind::NotInM:
    case ErrorKind::NotQuadratic: return 2;
    case ErrorKind::NotInvolutive:
    case ErrorKind::InconsistentSymmetry:
    case ErrorKind::NotPureTensor:
    case ErrorKind::NotDefiniteType: return 3;
    case ErrorKind::UnsupportedMode:
    case ErrorKind::UnsupportedConfiguration:
    case ErrorKind::UnsupportedFamily:
    case ErrorKind::DegenerateDecomposition: return 4;
  }
  return 2;
}

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  fail(ErrorKind::InputShape, path + ": " + what);
}

inline Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_error(path, "expected a number or an [re, im] pair");
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) schema_error(path, "non-finite entry");
  return z;
}

/// Rows of [re, im] pairs. `dim` < 0 accepts any square shape.
inline Matrix matrix_from_json(const json& j, const std::string& path, Index dim = -1) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) schema_error(path + "[0]", "expected a row array");
  const auto cols = static_cast<Index>(j[0].size());
  if (rows != cols) schema_error(path, "matrix is not square");
  if (dim >= 0 && rows != dim)
    schema_error(path, "matrix is " + std::to_string(rows) + "x" + std::to_string(cols) + ", dimension is " +
                           std::to_string(dim));
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) schema_error(rp, "ragged row");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    out.push_back(std::move(row));
  }
  return out;
}

inline GroupMode parse_mode(const std::string& s, const std::string& path) {
  if (s == "none") return GroupMode::None;
  if (s == "finite-group" || s == "finite") return GroupMode::FiniteGroup;
  if (s == "lie-algebra" || s == "lie") return GroupMode::LieAlgebra;
  if (s == "spin-half") return GroupMode::SpinHalf;
  schema_error(path, "unknown mode \"" + s + "\"");
}

/// Build and validate a setting. Tolerance precedence: file, then
/// $TENFOLD_TOLERANCE, then the built-in default.
inline SymmetrySetting parse_spec(const json& j) {
  if (!j.is_object()) schema_error("$", "expected an object");
  if (j.contains("schema_version") && j["schema_version"] != "1" && j["schema_version"] != 1)
    schema_error("schema_version", "unsupported version");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer() || j["dimension"].get<long long>() < 1)
    schema_error("dimension", "expected a positive integer");
  const Index n = j["dimension"].get<Index>();

  SymmetrySetting s;
  s.dim_V = n;
  s.tol = Tolerances::from_env();
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() >= 0.0)) schema_error("tolerance", "expected a number >= 0");
    s.tol.input = j["tolerance"].get<double>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) schema_error("seed", "expected an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  const std::string setting = j.value("setting", std::string("hilbert"));
  if (setting == "hilbert")
    s.kind = SpaceKind::Hilbert;
  else if (setting == "nambu")
    s.kind = SpaceKind::Nambu;
  else
    schema_error("setting", "expected \"hilbert\" or \"nambu\"");

  GroupMode mode = GroupMode::None;
  std::vector<Matrix> gens;
  if (j.contains("g0")) {
    const auto& g = j["g0"];
    if (!g.is_object()) schema_error("g0", "expected an object");
    if (!g.contains("mode") || !g["mode"].is_string()) schema_error("g0.mode", "missing");
    mode = parse_mode(g["mode"].get<std::string>(), "g0.mode");
    if (g.contains("generators")) {
      if (!g["generators"].is_array()) schema_error("g0.generators", "expected an array");
      for (std::size_t i = 0; i < g["generators"].size(); ++i) {
        const std::string path = "g0.generators[" + std::to_string(i) + "]";
        gens.push_back(matrix_from_json(g["generators"][i], path, n));
        const Matrix& x = gens.back();
        if (mode == GroupMode::FiniteGroup && !is_unitary(x, s.tol.input)) schema_error(path, "not unitary");
        if (mode == GroupMode::LieAlgebra && !is_anti_hermitian(x, s.tol.input)) schema_error(path, "not anti-Hermitian");
      }
    }
    if ((mode == GroupMode::None || mode == GroupMode::SpinHalf) && !gens.empty())
      schema_error("g0.generators", "mode " + std::string(to_string(mode)) + " takes no generators");
  }
  switch (mode) {
    case GroupMode::None: s.g0 = trivial_action(n); break;
    case GroupMode::FiniteGroup: s.g0 = close_group(n, gens, 10000, s.tol.input); break;
    case GroupMode::LieAlgebra: s.g0 = lie_algebra_action(n, gens, s.tol.input); break;
    case GroupMode::SpinHalf:
      if (n % 2 != 0) schema_error("g0.mode", "spin-half needs even dimension");
      s.g0 = spin_half_action(n);
      break;
  }

  if (j.contains("time_reversal")) {
    const auto& t = j["time_reversal"];
    if (!t.is_object() || !t.contains("matrix")) schema_error("time_reversal.matrix", "missing");
    const Matrix u = matrix_from_json(t["matrix"], "time_reversal.matrix", n);
    if (!is_unitary(u, s.tol.input)) schema_error("time_reversal.matrix", "not unitary");
    s.T = AntiUnitaryOp{u};
  }
  if (j.contains("particle_hole")) {
    const auto& c = j["particle_hole"];
    if (!c.is_object() || !c.contains("s_matrix")) schema_error("particle_hole.s_matrix", "missing");
    const Matrix m = matrix_from_json(c["s_matrix"], "particle_hole.s_matrix", n);
    if (!is_unitary(m, s.tol.input)) schema_error("particle_hole.s_matrix", "not unitary");
    s.S = m;
  }
  validate_setting(s);
  if (s.kind == SpaceKind::Nambu) s = build_nambu(s);
  return s;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InputShape, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InputShape, path + ": " + e.what());
  }
}

inline SymmetrySetting parse_spec_file(const std::string& path) { return parse_spec(read_json_file(path)); }

/// "N" or "p,q" accepted for every family; rejects malformed text.
inline ClassLabel parse_label(const std::string& family, const std::string& dims) {
  const auto f = parse_family(family);
  if (!f) fail(ErrorKind::InputShape, "unknown class \"" + family + "\"");
  std::vector<Index> parts;
  std::stringstream ss(dims);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::InputShape, "bad dims \"" + dims + "\"");
    }
    if (used != item.size()) fail(ErrorKind::InputShape, "bad dims \"" + dims + "\"");
    parts.push_back(static_cast<Index>(v));
  }
  if (is_chiral(*f)) {
    if (parts.size() != 2) fail(ErrorKind::InputShape, family + " needs dims p,q");
    return ClassLabel::make(*f, parts[0], parts[1]);
  }
  if (parts.size() != 1) fail(ErrorKind::InputShape, family + " needs a single dimension N");
  return ClassLabel::make(*f, parts[0]);
}

inline json report_to_json(const ClassificationReport& r) {
  json out;
  out["setting"] = std::string(to_string(r.kind));
  out["tenfold"] = r.tenfold;
  out["dimension"] = r.dim;
  if (!r.pattern.empty()) out["pattern"] = r.pattern;
  out["blocks"] = json::array();
  for (const auto& e : r.entries) {
    json b;
    b["lambda"] = e.labels;
    b["d"] = e.d;
    b["m"] = e.m;
    b["class"] = std::string(to_string(e.label.family));
    b["dims"] = e.label.dims_string();
    b["space"] = e.label.space_name();
    if (e.eps_T) b["eps_T"] = *e.eps_T;
    if (e.eps_alpha) b["eps_alpha"] = *e.eps_alpha;
    if (e.eps_beta) b["eps_beta"] = *e.eps_beta;
    out["blocks"].push_back(std::move(b));
  }
  return out;
}

}  // namespace tenfold::io
