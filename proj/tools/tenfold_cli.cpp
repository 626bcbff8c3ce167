#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tenfold/tenfold.hpp"

using namespace tenfold;
using io::json;

namespace {

constexpr int kInvariantFailure = 5;

struct SampleFlags {
  std::string family;
  std::string dims;
  std::string kind = "gaussian";
  double sigma = 1.0;
  std::size_t count = 1;
  std::uint64_t seed = 0;
};

void add_sample_flags(CLI::App* cmd, SampleFlags& f, bool required) {
  cmd->add_option("--class", f.family, "Cartan family (A, AI, ..., CII)")->required(required);
  cmd->add_option("--dims", f.dims, "N, or p,q for chiral classes")->required(required);
  cmd->add_option("--kind", f.kind, "gaussian or circular")->check(CLI::IsMember({"gaussian", "circular"}));
  cmd->add_option("--sigma", f.sigma, "Gaussian scale");
  cmd->add_option("--count", f.count, "number of samples");
  cmd->add_option("--seed", f.seed, "root seed (default 0)");
}

EnsembleSpec make_spec(const SampleFlags& f) {
  EnsembleSpec spec{io::parse_label(f.family, f.dims), f.sigma,
                    f.kind == "circular" ? EnsembleKind::Circular : EnsembleKind::Gaussian};
  if (!(f.sigma > 0.0)) fail(ErrorKind::InputShape, "--sigma must be > 0");
  return spec;
}

std::string header(const EnsembleSpec& spec, const SampleFlags& f) {
  std::ostringstream os;
  os << "# tenfold sample class=" << to_string(spec.label.family) << " dims=" << spec.label.dims_string()
     << " kind=" << to_string(spec.kind) << " seed=" << f.seed << " count=" << f.count;
  return os.str();
}

// Sample i is drawn from child stream i, so records do not depend on batching.
Matrix draw(const EnsembleSpec& spec, std::uint64_t seed, std::size_t i) {
  RngStream rng = RngStream(seed).child(i);
  return sample(spec, rng);
}

/// Sorted eigenvalues for Hermitian records, sorted eigenphases for unitary ones.
std::vector<double> spectrum_of(const Matrix& m, bool unitary) {
  if (!unitary) return to_std(eigvals_hermitian(m));
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(out.begin(), out.end());
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void print_stats(const std::vector<std::vector<double>>& spectra, Index bins) {
  if (spectra.empty()) fail(ErrorKind::InputShape, "no spectra to analyze");
  MeanAccumulator acc;
  for (const auto& sp : spectra)
    for (double r : spacing_ratios(sp).ratios) acc.add(r);
  const Histogram h = spectral_density(spectra, bins);
  std::cout << "statistic,value,stderr\n";
  std::cout << "mean_r," << fmt(acc.mean()) << "," << fmt(acc.std_error()) << "\n";
  std::cout << "bin_center,density\n";
  for (std::size_t k = 0; k < h.centers.size(); ++k) std::cout << fmt(h.centers[k]) << "," << fmt(h.density[k]) << "\n";
}

std::vector<std::vector<double>> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InputShape, "cannot open " + path);
  std::vector<std::vector<double>> spectra;
  bool circular = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      circular = circular || line.find("kind=circular") != std::string::npos;
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::InputShape, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    const Matrix m = io::matrix_from_json(j, path + ":" + std::to_string(lineno));
    const bool unitary = circular || !is_hermitian(m, 1e-10);
    if (unitary && !is_unitary(m, 1e-8))
      fail(ErrorKind::InputShape, path + ":" + std::to_string(lineno) + ": matrix is neither Hermitian nor unitary");
    spectra.push_back(spectrum_of(m, unitary));
  }
  return spectra;
}

int report_verify(const VerifyReport& r) {
  for (const auto& c : r.checks) std::cout << format_check(c) << "\n";
  if (r.pass()) {
    std::cout << "all " << r.checks.size() << " invariants passed\n";
    return 0;
  }
  std::string list;
  for (const auto& id : r.failed_ids()) list += (list.empty() ? "" : ", ") + id;
  std::cout << "failed invariants: " << list << "\n";
  std::cerr << "error: invariant failure: " << list << "\n";
  return kInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-class classification, random-matrix ensembles and invariant checks"};
  app.require_subcommand(1);

  std::string spec_path;
  bool force_tenfold = false, as_json = false;
  auto* classify_cmd = app.add_subcommand("classify", "classify a symmetry specification file");
  classify_cmd->add_option("spec", spec_path, "JSON spec file")->required();
  classify_cmd->add_flag("--tenfold", force_tenfold, "lift to the Nambu setting before classifying");
  classify_cmd->add_flag("--json", as_json, "JSON report");

  SampleFlags sflags;
  std::string out_path;
  auto* sample_cmd = app.add_subcommand("sample", "draw ensemble samples");
  add_sample_flags(sample_cmd, sflags, true);
  sample_cmd->add_option("--out", out_path, "output file (default stdout)");

  SampleFlags tflags;
  std::string stats_path;
  Index bins = 20, iid = 0;
  auto* stats_cmd = app.add_subcommand("stats", "spacing ratio and spectral density as CSV");
  stats_cmd->add_option("file", stats_path, "sample file written by `sample`");
  add_sample_flags(stats_cmd, tflags, false);
  stats_cmd->add_option("--bins", bins, "histogram bins");
  stats_cmd->add_option("--iid", iid, "uncorrelated control: sorted uniform spectra of this size");

  std::string verify_spec;
  bool all_classes = false;
  std::string level_name = "fast";
  std::uint64_t verify_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  verify_cmd->add_option("spec", verify_spec, "JSON spec file");
  verify_cmd->add_flag("--all-classes", all_classes, "suites for all ten classes");
  verify_cmd->add_option("--level", level_name, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify_cmd->add_option("--seed", verify_seed, "seed for --all-classes");

  Index max_n = 6;
  std::uint64_t fock_seed = 0;
  auto* fock_cmd = app.add_subcommand("fock-verify", "Fock-space oracle checks");
  fock_cmd->add_option("--max-n", max_n, "largest number of modes (1..8)");
  fock_cmd->add_option("--seed", fock_seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*classify_cmd) {
      const SymmetrySetting s = io::parse_spec_file(spec_path);
      const ClassificationReport r = force_tenfold ? classify_tenfold(s) : classify(s);
      if (as_json) {
        std::cout << io::report_to_json(r).dump(2) << "\n";
        return 0;
      }
      for (const auto& e : r.entries) {
        std::string lambda;
        for (Index l : e.labels) lambda += (lambda.empty() ? "" : ",") + std::to_string(l);
        std::cout << "lambda=" << lambda << " d=" << e.d << " m=" << e.m << " class=" << to_string(e.label.family)
                  << " space=" << e.label.space_name() << "\n";
      }
      return 0;
    }

    if (*sample_cmd) {
      const EnsembleSpec spec = make_spec(sflags);
      std::unique_ptr<std::ofstream> file;
      if (!out_path.empty()) {
        file = std::make_unique<std::ofstream>(out_path);
        if (!*file) fail(ErrorKind::InputShape, "cannot write " + out_path);
      }
      std::ostream& os = file ? *file : std::cout;
      os << header(spec, sflags) << "\n";
      for (std::size_t i = 0; i < sflags.count; ++i) os << io::matrix_to_json(draw(spec, sflags.seed, i)).dump() << "\n";
      return 0;
    }

    if (*stats_cmd) {
      std::vector<std::vector<double>> spectra;
      if (!stats_path.empty()) {
        spectra = read_sample_file(stats_path);
      } else if (iid > 0) {
        const RngStream root(tflags.seed);
        for (std::size_t i = 0; i < tflags.count; ++i) {
          RngStream rng = root.child(i);
          std::vector<double> v;
          for (Index k = 0; k < iid; ++k) v.push_back(rng.uniform());
          std::sort(v.begin(), v.end());
          spectra.push_back(std::move(v));
        }
      } else {
        if (tflags.family.empty() || tflags.dims.empty())
          fail(ErrorKind::InputShape, "stats needs a sample file, --iid, or --class and --dims");
        const EnsembleSpec spec = make_spec(tflags);
        for (std::size_t i = 0; i < tflags.count; ++i)
          spectra.push_back(spectrum_of(draw(spec, tflags.seed, i), spec.kind == EnsembleKind::Circular));
      }
      print_stats(spectra, bins);
      return 0;
    }

    if (*verify_cmd) {
      const VerifyLevel level = level_name == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
      if (all_classes == !verify_spec.empty()) fail(ErrorKind::InputShape, "verify takes a spec file or --all-classes");
      if (all_classes) return report_verify(verify_all_classes(level, Tolerances::from_env(), verify_seed));
      return report_verify(verify_setting(io::parse_spec_file(verify_spec), level));
    }

    if (*fock_cmd) {
      if (max_n < 1 || max_n > 8) fail(ErrorKind::InputShape, "--max-n must be in 1..8");
      RngStream rng(fock_seed);
      return report_verify(verify_fock(max_n, Tolerances::from_env(), rng, 20));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
