#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "multisym/multisym.hpp"
#include "oracles.hpp"

using namespace multisym;
namespace fs = std::filesystem;

namespace {

KForm parse_str(const std::string& text) {
  std::istringstream is(text);
  return parse_3form(is).form;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(MULTISYM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "multisym_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("form parsing follows the grammar") {
  CHECK(parse_str("1 1 2 3\n1 4 5 6\n") == product_representative());
  CHECK(parse_str("# comment\n\n-3/4 2 4 6\n") ==
        Scalar(Rational(-3, 4)) * KForm::monomial({2, 4, 6}));
  CHECK(parse_str("") == KForm(3));
  // duplicates are summed
  CHECK(parse_str("1 1 2 3\n2 1 2 3\n") == Scalar(3) * KForm::monomial({1, 2, 3}));
  CHECK(parse_str("1 1 2 3\n-1 1 2 3\n") == KForm(3));

  CHECK_THROWS_AS(parse_str("1/2 1 2 2\n"), ParseError);
  CHECK_THROWS_AS(parse_str("1 1 2 7\n"), ParseError);
  CHECK_THROWS_AS(parse_str("1.5 1 2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_str("1 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_str("1/0 1 2 3\n"), ParseError);
  try {
    parse_str("1 1 2 3\nbogus 1 2 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("emit and parse round trip") {
  SplitMix64 rng(3);
  for (int t = 0; t < 10; ++t) {
    KForm f = oracles::random_form(rng, 3);
    CHECK(parse_str(emit_form_text(f, "round trip")) == f);
  }
}

TEST_CASE("theta files") {
  std::istringstream ok("2/3 1 2 3 4 5 6\n");
  CHECK(parse_theta(ok) == Scalar(Rational(2, 3)) * KForm::monomial({1, 2, 3, 4, 5, 6}));
  std::istringstream bad("1 1 2 3 4 5 5\n");
  CHECK_THROWS_AS(parse_theta(bad), ParseError);
  std::istringstream zero("0 1 2 3 4 5 6\n");
  CHECK_THROWS_AS(parse_theta(zero), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_theta(empty), ParseError);
}

TEST_CASE("digest and report determinism") {
  CHECK(input_digest("abc") == input_digest("abc"));
  CHECK(input_digest("abc") != input_digest("abd"));

  Json a = classify_report(product_representative());
  Json b = classify_report(product_representative());
  CHECK(render(a, false) == render(b, false));
  CHECK(a["orbit"] == "product");
  CHECK(a["mu"] == "1");
  CHECK(a["multisymplectic"] == true);

  Json none = classify_report(KForm::monomial({1, 2, 3}));
  CHECK(none["orbit"] == "none");
  CHECK(none["multisymplectic"] == false);
}

TEST_CASE("sampler determinism and orbit correctness") {
  std::vector<KForm> a = sample_orbit(OrbitType::Tangent, 7, 1);
  std::vector<KForm> b = sample_orbit(OrbitType::Tangent, 7, 1);
  CHECK(a[0] == b[0]);

  std::vector<KForm> five = sample_orbit(OrbitType::Product, 7, 5);
  std::vector<KForm> four = sample_orbit(OrbitType::Product, 7, 4);
  for (int i = 0; i < 4; ++i) CHECK(five[i] == four[i]);  // per-item subseeds

  for (const KForm& w : sample_orbit(OrbitType::Product, 7, 3))
    CHECK(orbit_type(w) == OrbitType::Product);
  for (const KForm& w : sample_orbit(OrbitType::Complex, 12345, 5))
    CHECK(mu_invariant(w).sign() < 0);

  // jobs do not change the output
  std::vector<KForm> seq = sample_orbit(OrbitType::Tangent, 99, 8, 1);
  std::vector<KForm> par = sample_orbit(OrbitType::Tangent, 99, 8, 4);
  CHECK(seq == par);

  // sampled maps are unimodular over the integers
  LinMap g = sample_unimodular(subseed(7, 0));
  for (size_t i = 0; i < kDim; ++i)
    for (size_t j = 0; j < kDim; ++j)
      CHECK(boost::multiprecision::denominator(g.at(i, j).rat()) == 1);
  CHECK(rank(g.mat()) == 6);
}

TEST_CASE("cli classify and determinism") {
  fs::path wplus = write_file("wplus.form", "1 1 2 3\n1 4 5 6\n");
  RunResult r1 = run_cli("classify " + wplus.string());
  CHECK(r1.exit_code == 0);
  Json doc = Json::parse(r1.output);
  CHECK(doc["orbit"] == "product");
  CHECK(doc["mu"] == "1");
  RunResult r2 = run_cli("classify " + wplus.string());
  CHECK(r1.output == r2.output);  // byte identical

  RunResult plain = run_cli("--plain classify " + wplus.string());
  CHECK(plain.exit_code == 0);
  CHECK(plain.output.find("orbit: product") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  fs::path bad = write_file("bad.form", "1 2 2 3\n");
  CHECK(run_cli("classify " + bad.string()).exit_code == 1);
  CHECK(run_cli("classify " + scratch_dir().string() + "/missing.form").exit_code == 1);
  CHECK(run_cli("bogus-command").exit_code == 1);

  fs::path deg = write_file("deg.form", "1 1 2 3\n");
  CHECK(run_cli("classify " + deg.string()).exit_code == 0);  // reports orbit none
  CHECK(run_cli("structure " + deg.string()).exit_code == 2);
  CHECK(run_cli("delta2 " + deg.string()).exit_code == 2);
  CHECK(run_cli("normal-form " + deg.string()).exit_code == 2);
  CHECK(run_cli("orbit-report " + deg.string()).exit_code == 2);

  fs::path wminus =
      write_file("wminus.form", "1 1 2 3\n1 1 4 5\n1 2 4 6\n-1 3 5 6\n");
  CHECK(run_cli("witness " + wminus.string()).exit_code == 2);
  CHECK(run_cli("tables --which nonsense").exit_code == 2);
}

TEST_CASE("cli structure, delta2, normal-form, orbit-report, witness") {
  fs::path w0 = write_file("w0.form", "1 1 4 5\n1 2 4 6\n1 3 5 6\n");
  Json st = Json::parse(run_cli("structure " + w0.string()).output);
  CHECK(st["orbit"] == "tangent");
  CHECK(st["lambda"] == "0");
  CHECK(st["structure_square"] == "0");
  CHECK(st["compatible"] == true);

  Json d2 = Json::parse(run_cli("delta2 " + w0.string()).output);
  CHECK(d2["kind"] == "single_subspace");
  CHECK(d2["spaces"][0]["dim"] == 3);

  Json nf = Json::parse(run_cli("normal-form " + w0.string()).output);
  CHECK(nf["residual_zero"] == true);
  CHECK(nf["orbit"] == "tangent");

  Json rep = Json::parse(run_cli("orbit-report " + w0.string()).output);
  CHECK(rep["filtration"]["dims"]["d2"] == 10);
  CHECK(rep["filtration"]["n_cubed_zero"] == true);

  Json wit = Json::parse(run_cli("witness " + w0.string()).output);
  CHECK(wit["kind"] == "ker_n2");
  CHECK(wit["wedge"]["terms"].size() == 1);
}

TEST_CASE("cli tables") {
  Json prod = Json::parse(run_cli("tables --which product").output);
  CHECK(prod["involution_table"]["lines"].size() == 16);
  CHECK(prod["involution_table"]["regenerated_matches_published"] == true);
  Json cplx = Json::parse(run_cli("tables --which complex").output);
  CHECK(cplx["complex_table"]["count"] == 4);
}

TEST_CASE("cli theta override scales mu") {
  fs::path wplus = write_file("wplus2.form", "1 1 2 3\n1 4 5 6\n");
  fs::path th = write_file("theta2.form", "2 1 2 3 4 5 6\n");
  Json doc = Json::parse(
      run_cli("--theta " + th.string() + " classify " + wplus.string()).output);
  CHECK(doc["mu"] == "1/4");
  CHECK(doc["orbit"] == "product");
}

TEST_CASE("cli sample writes classifiable deterministic files") {
  fs::path dir = scratch_dir() / "samples";
  fs::remove_all(dir);
  RunResult r = run_cli("sample --orbit tangent --seed 7 --count 3 --out " + dir.string() +
                        " --jobs 2");
  CHECK(r.exit_code == 0);
  Json doc = Json::parse(r.output);
  REQUIRE(doc["files"].size() == 3);
  for (const auto& item : doc["files"]) {
    CHECK(item["orbit"] == "tangent");
    std::ifstream in(item["path"].get<std::string>());
    FormFile f = parse_3form(in);
    CHECK(orbit_type(f.form) == OrbitType::Tangent);
  }
  // rerunning reproduces the same bytes
  std::ifstream first(doc["files"][0]["path"].get<std::string>());
  std::stringstream s1;
  s1 << first.rdbuf();
  fs::remove_all(dir);
  run_cli("sample --orbit tangent --seed 7 --count 3 --out " + dir.string());
  std::ifstream second(doc["files"][0]["path"].get<std::string>());
  std::stringstream s2;
  s2 << second.rdbuf();
  CHECK(s1.str() == s2.str());
}
