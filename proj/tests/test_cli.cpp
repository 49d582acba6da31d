#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support.hpp"

using testing::report_text;
using testing::report_value;
using testing::run_cli;

namespace {

namespace fs = std::filesystem;

std::string config(const std::string& name) {
  return std::string(HAMMER_SOURCE_DIR) + "/configs/" + name + ".toml";
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "hammerstein_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("shipped configs match the files in configs/") {
  for (const auto& n : hammer::cli::shipped_names()) {
    CAPTURE(n);
    CHECK(hammer::cli::shipped_config(n) == read(config(n)));
  }
  CHECK(hammer::cli::shipped_config("nope").empty());
}

TEST_CASE("verify with an empty plan is bad input") {
  auto path = scratch("empty.toml");
  std::ofstream(path) << "[problem]\nkernel = { builtin = \"reactor\", lambda = 1 }\n"
                         "g = 1\nf = \"u\"\nH = 0\n";
  auto r = run_cli({"verify", "--config", path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("bad input exits with 2") {
  CHECK(run_cli({"verify", "--config", "/nonexistent/x.toml"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"reproduce", "nope"}).code == 2);
  CHECK(run_cli({"solve", "--config", config("reactor"), "--u0", "ramp"}).code == 2);
  CHECK(run_cli({"verify", "--config", config("beam"), "--param", "x"}).code == 2);
  CHECK(run_cli({"verify-system", "--config", config("reactor")}).code == 2);
}

TEST_CASE("verify passes on the beam and thermostat examples") {
  for (const char* n : {"beam", "thermostat"}) {
    auto r = run_cli({"verify", "--config", config(n)});
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(report_text(r.out, "verify.status") == "pass");
    CHECK(report_text(r.out, "existence.statement") == "at least one nontrivial solution");
  }
}

TEST_CASE("single check from the command line") {
  auto path = scratch("alpha.toml");
  std::ofstream(path) << "alpha = { atoms = [{ t = \"1/5\", w = \"1/2\" }] }\n";
  auto r = run_cli({"verify", "--config", config("thermostat"), "--check", "index1",
                    "--rho", "0.3333333333333333", "--alpha", path.string()});
  CHECK(r.code == 0);
  CHECK(report_value(r.out, "check1.index1.alpha_gamma") == doctest::Approx(0.15));
}

TEST_CASE("reports are deterministic") {
  auto a = run_cli({"reproduce", "thermostat"});
  auto b = run_cli({"reproduce", "thermostat"});
  CHECK(a.out == b.out);
  auto c = run_cli({"verify", "--config", config("beam")});
  auto d = run_cli({"verify", "--config", config("beam")});
  CHECK(c.out == d.out);
}

TEST_CASE("solve writes a CSV profile") {
  auto path = scratch("reactor.csv");
  auto r = run_cli({"solve", "--config", config("reactor"), "--nodes", "65", "--out",
                    path.string()});
  CHECK(r.code == 0);
  CHECK(report_text(r.out, "solve.status") == "converged");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,u");
  int rows = 0;
  double last_t = -1.0;
  while (std::getline(in, line)) {
    ++rows;
    last_t = std::stod(line.substr(0, line.find(',')));
  }
  CHECK(rows == 65);
  CHECK(last_t == 1.0);

  auto sys = scratch("elliptic.csv");
  auto s = run_cli({"solve", "--config", config("elliptic"), "--nodes", "33", "--out",
                    sys.string()});
  CHECK(s.code == 0);
  std::ifstream sin(sys);
  std::getline(sin, line);
  CHECK(line == "t,u,v");
}

TEST_CASE("diverged solves exit with 1") {
  auto r = run_cli({"solve", "--config", config("beam"), "--nodes", "65"});
  CHECK(r.code == 1);
  CHECK(report_text(r.out, "solve.status") == "diverged");
}

TEST_CASE("transform output verifies like the annulus config") {
  auto path = scratch("system.toml");
  auto t = run_cli({"transform", "--config", config("elliptic"), "--out", path.string()});
  REQUIRE(t.code == 0);
  CHECK(report_value(t.out, "transform.eta") == doctest::Approx(0.5));
  auto a = run_cli({"verify-system", "--config", config("elliptic")});
  auto b = run_cli({"verify-system", "--config", path.string()});
  for (const char* key : {"check2.system_index1.equation_1.f_bound",
                          "check2.system_index1.equation_2.f_bound",
                          "check1.system_index0_diamond.equation_2.threshold",
                          "check3.system_index0.equation_2.f_bound"}) {
    CAPTURE(key);
    CHECK(report_value(b.out, key) == doctest::Approx(report_value(a.out, key)).epsilon(1e-10));
  }
  CHECK(a.code == b.code);
}

TEST_CASE("non-existence example and its parameter override") {
  auto r = run_cli({"nonexist", "--config", config("nonexistence")});
  CHECK(r.code == 0);
  CHECK(report_value(r.out, "nonexist.nonexistence.M_alpha") == doctest::Approx(16.0));
  auto low = run_cli({"nonexist", "--config", config("nonexistence"), "--param",
                      "lambda=2^(14/3)/3 - 1/10"});
  CHECK(low.code == 1);
  CHECK(report_text(low.out, "nonexist.status") == "fail");
}

TEST_CASE("settings flags reach the reports") {
  auto r = run_cli({"verify", "--config", config("beam"), "--panels", "32", "--grid-n", "256"});
  CHECK(r.code == 0);
  CHECK(report_value(r.out, "check1.index1.settings.panels") == 32.0);
  CHECK(report_value(r.out, "check1.index1.settings.grid_n") == 256.0);
}

TEST_SUITE("published examples") {
  TEST_CASE("reproduce reactor matches the five bullet constants") {
    auto r = run_cli({"reproduce", "reactor"});
    CHECK(std::abs(report_value(r.out, "check1.index0.alpha_gamma") - 0.254) <= 0.005);
    CHECK(std::abs(report_value(r.out, "check2.index1.alpha_gamma") - 0.143) <= 0.005);
    CHECK(std::abs(report_value(r.out, "check1.index0.envelope_f") - 2.057) <= 0.005);
    CHECK(std::abs(report_value(r.out, "check2.index1.envelope_f") - 2.811) <= 0.005);
    CHECK(report_text(r.out, "verify.status") == "pass");
    CHECK(r.code == 0);
  }

  TEST_CASE("reproduce elliptic reports two solutions") {
    auto r = run_cli({"reproduce", "elliptic"});
    CHECK(report_text(r.out, "existence.statement") == "at least two nontrivial solutions");
    CHECK(r.code == 0);
  }
}
