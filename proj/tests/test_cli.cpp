#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "tenfold/io.hpp"
#include "tenfold/linalg.hpp"

using namespace tenfold;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the CLI through the shell; `prefix` holds environment assignments.
Run run(const std::string& args, const std::string& prefix = "", bool merge_stderr = false) {
  const std::string cmd = prefix + " " + TENFOLD_CLI_PATH + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path workdir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("tenfold_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    out.push_back(text.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

const char* kTrivial = R"({"schema_version": "1", "dimension": 2, "setting": "hilbert", "g0": {"mode": "none"}})";
const char* kNambu3 = R"({"schema_version": "1", "dimension": 3, "setting": "nambu", "g0": {"mode": "none"}})";
const char* kU1Twist = R"({"schema_version": "1", "dimension": 3, "setting": "nambu",
  "g0": {"mode": "lie-algebra", "generators": [[[[0,1],[0,0],[0,0]],[[0,0],[0,1],[0,0]],[[0,0],[0,0],[0,1]]]]},
  "particle_hole": {"s_matrix": [[1,0,0],[0,-1,0],[0,0,-1]]}})";

}  // namespace

TEST_CASE("classify examples", "[cli]") {
  const auto triv = run("classify " + write_file("triv.json", kTrivial));
  CHECK(triv.code == 0);
  CHECK(triv.out.find("class=A space=U_2") != std::string::npos);
  CHECK(triv.out.rfind("lambda=0 d=1 m=2 ", 0) == 0);

  const auto d = run("classify " + write_file("nambu3.json", kNambu3));
  CHECK(d.code == 0);
  CHECK(d.out.find("class=D space=SO_6") != std::string::npos);

  const auto aiii = run("classify " + write_file("u1.json", kU1Twist));
  CHECK(aiii.code == 0);
  CHECK(aiii.out.find("class=AIII space=U_3/(U_1 x U_2)") != std::string::npos);

  const auto spin = run("classify --json " +
                        write_file("spin.json", R"({"dimension": 2, "time_reversal": {"matrix": [[0,1],[-1,0]]}})"));
  REQUIRE(spin.code == 0);
  const auto j = io::json::parse(spin.out);
  CHECK(j["blocks"][0]["eps_T"] == -1);
  CHECK(j["blocks"][0]["class"] == "AII");

  // the trivial hilbert spec lifted to Nambu space is class D
  const auto lifted = run("classify --tenfold " + write_file("triv.json", kTrivial));
  CHECK(lifted.out.find("class=D space=SO_4") != std::string::npos);
}

TEST_CASE("exit code contract", "[cli]") {
  const auto badgen = run("classify " + write_file("badgen.json", R"({"dimension": 2,
    "g0": {"mode": "finite-group", "generators": [[[2,0],[0,1]]]}})"),
                          "", true);
  CHECK(badgen.code == 2);
  CHECK(badgen.out.find("g0.generators[0]") != std::string::npos);

  CHECK(run("classify " + write_file("ragged.json", R"({"dimension": 2, "time_reversal": {"matrix": [[1,0],[0]]}})")).code == 2);
  CHECK(run("classify " + write_file("nojson.json", "{not json")).code == 2);
  CHECK(run("classify " + (workdir() / "missing.json").string()).code == 2);
  CHECK(run("classify " + write_file("dim.json", R"({"dimension": 0})")).code == 2);

  // non-involutive T
  const auto bad_t = run("verify " + write_file("badT.json", R"({"dimension": 3,
    "time_reversal": {"matrix": [[0,1,0],[-1,0,0],[0,0,1]]}})"));
  CHECK(bad_t.code == 3);
  // T not normalizing G0
  CHECK(run("classify " + write_file("norm.json", R"({"dimension": 2,
    "g0": {"mode": "finite-group", "generators": [[[[0,0],[1,0]],[[1,0],[0,0]]]]},
    "time_reversal": {"matrix": [[1,0],[0,[0,1]]]}})"))
            .code == 3);

  const auto unsupported = run("classify " + write_file("z2.json", R"({"dimension": 2, "setting": "nambu",
    "g0": {"mode": "finite-group", "generators": [[[[1,0],[0,0]],[[0,0],[-1,0]]]]}})"),
                               "", true);
  CHECK(unsupported.code == 4);
  CHECK(unsupported.out.find("decision-table") != std::string::npos);

  CHECK(run("sample --class AII --dims 3").code == 2);
  CHECK(run("sample --class XYZ --dims 3").code == 2);
  CHECK(run("sample --class BDI --dims 3").code == 2);
  CHECK(run("stats " + (workdir() / "missing.txt").string()).code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("sample --dims 3").code == 2);
  CHECK(run("--help").code == 0);

  CHECK(run("verify --all-classes --level fast").code == 0);
  const auto strict = run("verify --all-classes --level fast", "TENFOLD_TOLERANCE=0");
  CHECK(strict.code == 5);
  CHECK(strict.out.find("failed invariants:") != std::string::npos);
  CHECK(run("fock-verify --max-n 3", "TENFOLD_TOLERANCE=0").code == 5);
  CHECK(run("fock-verify --max-n 3").code == 0);
}

TEST_CASE("sample determinism and content", "[cli]") {
  const auto a = run("sample --class A --dims 2 --count 1 --seed 7");
  const auto b = run("sample --class A --dims 2 --count 1 --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# tenfold sample class=A dims=2 kind=gaussian seed=7", 0) == 0);
  CHECK(run("sample --class A --dims 2 --count 1 --seed 8").out != a.out);

  // --out writes the same bytes; records do not depend on the count
  const std::string path = (workdir() / "a.txt").string();
  REQUIRE(run("sample --class A --dims 2 --count 1 --seed 7 --out " + path).code == 0);
  CHECK(slurp(path) == a.out);
  const auto three = lines(run("sample --class A --dims 2 --count 3 --seed 7").out);
  REQUIRE(three.size() == 4);
  CHECK(three[1] == lines(a.out)[1]);

  const auto d = lines(run("sample --class D --dims 3 --seed 1").out);
  REQUIRE(d.size() == 2);
  const Matrix h = io::matrix_from_json(io::json::parse(d[1]), "record");
  REQUIRE(h.rows() == 6);
  const RealVector e = eigvals_hermitian(h);
  for (Index i = 0; i < 6; ++i) CHECK(std::abs(e(i) + e(5 - i)) < 1e-12);

  const auto c = lines(run("sample --class AI --dims 4 --kind circular --seed 2").out);
  REQUIRE(c.size() == 2);
  CHECK(c[0].find("kind=circular") != std::string::npos);
  const Matrix x = io::matrix_from_json(io::json::parse(c[1]), "record");
  CHECK((x - x.transpose()).norm() < 1e-12);
  CHECK(unitary_defect(x) < 1e-12);
}

TEST_CASE("stats output", "[cli]") {
  const auto one = lines(run("stats --class A --dims 4 --count 50 --bins 1").out);
  REQUIRE(one.size() == 4);
  CHECK(one[0] == "statistic,value,stderr");
  CHECK(one[1].rfind("mean_r,", 0) == 0);
  CHECK(one[2] == "bin_center,density");
  // one bin over the symmetric range [-E, E]: density 1 / range
  const double density = std::stod(one[3].substr(one[3].find(',') + 1));
  const auto spectrum = lines(run("sample --class A --dims 4 --count 50").out);
  double top = 0.0;
  for (std::size_t i = 1; i < spectrum.size(); ++i) {
    const RealVector e = eigvals_hermitian(io::matrix_from_json(io::json::parse(spectrum[i]), "r"));
    top = std::max(top, e.cwiseAbs().maxCoeff());
  }
  CHECK(density == Catch::Approx(1.0 / (2.0 * top)).epsilon(1e-8));

  // a sample file and the equivalent flags give identical CSV
  const std::string path = (workdir() / "s.txt").string();
  REQUIRE(run("sample --class AI --dims 3 --count 200 --seed 4 --out " + path).code == 0);
  const auto from_file = run("stats " + path + " --bins 5");
  CHECK(from_file.code == 0);
  CHECK(from_file.out == run("stats --class AI --dims 3 --count 200 --seed 4 --bins 5").out);

  const auto iid = lines(run("stats --iid 3 --count 20000").out);
  REQUIRE(iid.size() >= 2);
  const auto fields = iid[1].substr(7);
  const double mean = std::stod(fields.substr(0, fields.find(',')));
  const double se = std::stod(fields.substr(fields.find(',') + 1));
  CHECK(std::abs(mean - (2.0 * std::log(2.0) - 1.0)) < 4.0 * se);
}

TEST_CASE("verify reports checks by name", "[cli]") {
  const auto full = run("verify --all-classes --level full");
  CHECK(full.code == 0);
  for (const char* id : {"C2 sign law", "covering two-to-one", "CAR", "CT=TC", "Cg=gC", "twisted transfer sign",
                         "CII(2,2) closure"})
    CHECK(full.out.find(std::string("PASS ") + id) != std::string::npos);

  const auto spec = run("verify " + write_file("u1.json", kU1Twist));
  CHECK(spec.code == 0);
  CHECK(spec.out.find("PASS hamiltonian dimension") != std::string::npos);
  CHECK(spec.out.find("PASS AIII(1,2) round trip") != std::string::npos);
}
