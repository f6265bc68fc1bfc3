#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "initial_conditions.hpp"
#include "json.hpp"
#include "oscillab/errors.hpp"

using namespace oscillab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (!l.empty() && l[0] != '#') rows.push_back(l);
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::path(OSCILLAB_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double last_column(const std::string& row) { return std::stod(row.substr(row.rfind(',') + 1)); }

}  // namespace

TEST_CASE("spectrum examples") {
  auto r = call({"spectrum", "--scheme", "forward_euler", "--r", "0.25", "--k", "10"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "j,lambda,scheme_value");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(last_column(rows[i]) >= 0.0);

  r = call({"spectrum", "--scheme", "backward_euler", "--r", "5", "--k", "10"});
  REQUIRE(r.code == 0);
  rows = csv_rows(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(last_column(rows[i]) > 0.0);
    CHECK(last_column(rows[i]) < 1.0);
  }

  r = call({"spectrum", "--scheme", "forward_euler", "--r", "0.25", "--k", "1"});
  REQUIRE(r.code == 0);
  rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1].substr(2)) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("bounds examples") {
  auto r = call({"bounds"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  CHECK(rows[0] == "scheme,sigma,nn_bound,balanced_bound,stable_bound");
  bool seen = false;
  for (const auto& row : rows) {
    if (row.rfind("forward_euler,0,", 0) == 0) {
      CHECK(row.rfind("forward_euler,0,0.25,", 0) == 0);
      CHECK(std::stod(row.substr(21)) == doctest::Approx(0.5).epsilon(1e-12));
      seen = true;
    }
  }
  CHECK(seen);

  r = call({"bounds", "--scheme", "forward_euler", "--sigma", "0.2"});
  REQUIRE(r.code == 0);
  rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[1].rfind("forward_euler,0.2,", 0) == 0);
  std::istringstream fields(rows[1].substr(18));
  std::string nn, bal;
  std::getline(fields, nn, ',');
  std::getline(fields, bal, ',');
  CHECK(std::stod(nn) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(std::stod(bal) == doctest::Approx(0.4).epsilon(1e-9));

  CHECK(call({"bounds", "--scheme", ""}).code == cli::kExitUsage);
  CHECK(call({"bounds", "--scheme", "nonsense"}).code == cli::kExitUsage);
}

TEST_CASE("check exit codes") {
  auto r = call({"check", "--scheme", "forward_euler", "--r", "0.2", "--ic", "ramp"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["classification"] == "NonOscillatory");
  CHECK(call({"check", "--scheme", "forward_euler", "--r", "0.3", "--ic", "ramp"}).code == 1);
  CHECK(call({"check", "--scheme", "crank_nicolson", "--r", "2", "--ic", "ramp"}).code == 2);
  CHECK(call({"check", "--scheme", "forward_euler", "--r", "0.6", "--ic", "ramp"}).code == 3);
  CHECK(call({"check", "--scheme", "forward_euler", "--r", "0.2", "--dt", "0.1"}).code ==
        cli::kExitUsage);
  CHECK(call({"check", "--scheme", "forward_euler"}).code == cli::kExitUsage);
  CHECK(call({"check", "--scheme", "forward_euler", "--r", "0.2", "--kind", "fisher_kpp"}).code ==
        cli::kExitUsage);
  CHECK(call({"check", "--scheme", "forward_euler", "--r", "0.2", "--k", "0"}).code ==
        cli::kExitUsage);
  CHECK(call({"frobnicate"}).code == cli::kExitUsage);
}

TEST_CASE("simulate writes every artifact and is reproducible") {
  const auto dir = scratch("simulate");
  const std::vector<std::string> args{"simulate", "--scheme", "forward_euler", "--r", "0.5",
                                      "--k", "20", "--steps", "50", "--ic", "noise:42",
                                      "--bc-left", "1", "--out", (dir / "a").string()};
  REQUIRE(call(args).code == 0);
  for (const char* ext : {".csv", ".pgm", ".pgm.json", "_profile.csv", ".json"})
    CHECK(fs::exists(dir / (std::string("a") + ext)));
  const auto report = json::parse(slurp(dir / "a.json"));
  CHECK(report["report"]["verdict"] == true);
  CHECK(report["diverged"] == false);

  auto again = args;
  again.back() = (dir / "b").string();
  REQUIRE(call(again).code == 0);
  for (const char* ext : {".csv", ".pgm", ".pgm.json", "_profile.csv", ".json"})
    CHECK(slurp(dir / (std::string("a") + ext)) == slurp(dir / (std::string("b") + ext)));

  const auto csv = slurp(dir / "a.csv");
  CHECK(csv.rfind("# config_hash=", 0) == 0);
}

TEST_CASE("simulate records divergence and exits zero") {
  const auto dir = scratch("diverge");
  auto r = call({"simulate", "--scheme", "forward_euler", "--r", "2", "--k", "20", "--steps",
                 "400", "--ic", "noise:1", "--format", "json", "--out", (dir / "x").string()});
  CHECK(r.code == 0);
  CHECK(json::parse(slurp(dir / "x.json"))["diverged"] == true);
}

TEST_CASE("io failure exit code") {
  auto r = call({"simulate", "--scheme", "forward_euler", "--r", "0.2", "--k", "5", "--steps",
                 "2", "--out", "/nonexistent-dir/sub/run"});
  CHECK(r.code == cli::kExitIo);
}

TEST_CASE("nonlinear eigs") {
  const auto dir = scratch("eigs");
  REQUIRE(call({"nonlinear-eigs", "--out", (dir / "f").string()}).code == 0);
  const auto j = json::parse(slurp(dir / "f.json"));
  CHECK(j["orthogonality_error"].get<double>() <= 1e-8);
  CHECK(fs::exists(dir / "f_pairing.csv"));
  const auto pairing = csv_rows(slurp(dir / "f_pairing.csv"));
  CHECK(pairing[0] == "j,partner,magnitude_mismatch,wave_like");
  CHECK(pairing.size() == 61);

  REQUIRE(call({"nonlinear-eigs", "--k", "2", "--out", (dir / "two").string()}).code == 0);
  const auto two = csv_rows(slurp(dir / "two_pairing.csv"));
  REQUIRE(two.size() == 3);
  CHECK(two[1].rfind("1,2,", 0) == 0);
  CHECK(two[2].rfind("2,1,", 0) == 0);

  CHECK(call({"nonlinear-eigs", "--kind", "heat", "--out", (dir / "h").string()}).code ==
        cli::kExitUsage);
}

TEST_CASE("initial conditions") {
  const schemes::BoundaryData bc{1.0, 0.0};
  const Vector ramp = cli::make_initial_condition("ramp", 3, bc, 0);
  CHECK(ramp == Vector{0.75, 0.5, 0.25});
  const Vector step = cli::make_initial_condition("step", 5, bc, 0);
  CHECK(step == Vector{1, 1, 0, 0, 0});
  const Vector s = cli::make_initial_condition("sine:1", 3, bc, 0);
  CHECK(s[1] == doctest::Approx(1.0));
  CHECK(cli::make_initial_condition("noise:7", 50, bc, 0) ==
        cli::make_initial_condition("noise", 50, bc, 7));
  const Vector z = cli::make_initial_condition("noise:7:0", 3, bc, 0);
  CHECK(z == ramp);
  CHECK_THROWS_AS(cli::make_initial_condition("sine:0", 3, bc, 0), InvalidInput);
  CHECK_THROWS_AS(cli::make_initial_condition("bogus", 3, bc, 0), InvalidInput);
  CHECK_THROWS_AS(cli::make_initial_condition("file:/nonexistent/ic.txt", 3, bc, 0), OscillabError);
}
