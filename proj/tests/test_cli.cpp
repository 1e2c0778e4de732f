#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "szabo/checks.hpp"
#include "szabo/connection.hpp"
#include "szabo/problem.hpp"

#include "common.hpp"

using namespace szabo;
using nlohmann::ordered_json;

namespace {

std::string fixture(const std::string& name) {
  return std::string(SZABO_FIXTURE_DIR) + "/" + name;
}

struct RunResult {
  int status = -1;
  std::string output;
};

// Runs the CLI binary and captures stdout+stderr and the exit status.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(SZABO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

ProblemFile parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

}  // namespace

TEST_CASE("problem parser reads a full file") {
  ProblemFile pf = parse_text(
      "name = demo\n"
      "description = sample\n"
      "dim = 3\n"
      "[connection]\n"
      "G[1,1,2] = u1*u3   # symmetric entry\n"
      "G[3,3,2] = u1+u3\n"
      "[twist]\n"
      "phi[1,1] = u2\n");
  CHECK(pf.name == "demo");
  CHECK(pf.dim == 3);
  CHECK(pf.nvars() == 13);  // u1..u6, a1..a6, L
  CHECK(pf.vars->name(12) == "L");
  CHECK(pf.alpha_first() == 6);
  testutil::Session s(3);
  AffineConnection expected = testutil::example36(s);
  CHECK(*pf.connection == expected);
  REQUIRE(pf.has_twist);
  CHECK(pf.twist->at(0, 0) == Polynomial::variable(13, 1));
  CHECK(pf.twist->at(1, 1).is_zero());
}

TEST_CASE("problem parser defaults and symmetric listing") {
  ProblemFile pf = parse_text(
      "dim = 2\n"
      "[connection]\n"
      "G[1,2,1] = u1\n"
      "G[2,1,1] = u1\n");  // same value for the symmetric pair: allowed
  CHECK(pf.coordinates == std::vector<std::string>{"u1", "u2"});
  CHECK(pf.connection->gamma(0, 0, 1) == Polynomial::variable(pf.nvars(), 0));
}

TEST_CASE("problem parser rejects conflicting symmetric entries with line numbers") {
  try {
    parse_text(
        "dim = 2\n"
        "[connection]\n"
        "G[1,2,1] = u1\n"
        "G[2,1,1] = u2\n");
    FAIL("expected ProblemError");
  } catch (const ProblemError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("conflicting") != std::string::npos);
  }
}

TEST_CASE("problem parser error positions") {
  auto expect_line = [](const std::string& text, std::size_t line) {
    try {
      parse_text(text);
      FAIL("expected ProblemError");
    } catch (const ProblemError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("dim = 9\n", 1);                                    // dimension out of range
  expect_line("dim = 2\n[connection]\nG[1,3,1] = u1\n", 3);       // index out of range
  expect_line("dim = 2\n[connection]\nG[1,1] = u1\n", 3);         // wrong index count
  expect_line("dim = 2\n[connection]\nG[1,1,1] = u1+\n", 3);      // expression syntax error
  expect_line("dim = 2\n[connection]\nG[1,1,1] = u5\n", 3);       // unknown coordinate
  expect_line("dim = 2\nbogus = 1\n", 2);                         // unknown header key
  expect_line("dim = 2\n[junk]\n", 2);                            // unknown section
  expect_line("name = x\n", 1);                                   // missing dim
}

TEST_CASE("check suite classifies the fixtures") {
  ProblemFile ex = load_problem(fixture("example36.geo"));
  CheckSuite s1 = run_check_suite(ex, true, false);
  CHECK(s1.all_pass());
  REQUIRE(s1.certificates.size() == 2);
  CHECK(s1.certificates[0].cert.nilpotent);
  CHECK(s1.certificates[1].cert.nilpotent);

  ProblemFile w = load_problem(fixture("non-szabo-witness.geo"));
  CheckSuite s2 = run_check_suite(w, false, false);
  CHECK_FALSE(s2.all_pass());
  for (const auto& c : s2.checks)
    if (c.name == "affine_szabo_nilpotent") {
      CHECK_FALSE(c.pass);
      CHECK_FALSE(c.witness.empty());
    }

  ProblemFile z = load_problem(fixture("zero.geo"));
  CheckSuite s3 = run_check_suite(z, true, false);
  CHECK(s3.all_pass());
}

TEST_CASE("cli charpoly exit codes and output") {
  RunResult ok = run_cli("szabo-charpoly " + fixture("example36.geo"));
  CHECK(ok.status == 0);
  CHECK(ok.output.find("P(L) = L^3") != std::string::npos);
  CHECK(ok.output.find("nilpotent: yes") != std::string::npos);

  RunResult ext = run_cli("szabo-charpoly " + fixture("example36.geo") + " --extend");
  CHECK(ext.status == 0);
  CHECK(ext.output.find("P(L) = L^6") != std::string::npos);

  RunResult tw = run_cli("szabo-charpoly " + fixture("metric39-twist.geo") + " --extend --twist");
  CHECK(tw.status == 0);
  CHECK(tw.output.find("nilpotent: yes") != std::string::npos);

  RunResult bad = run_cli("szabo-charpoly " + fixture("non-szabo-witness.geo"));
  CHECK(bad.status == 2);
  CHECK(bad.output.find("nilpotent: no") != std::string::npos);
}

TEST_CASE("cli tool errors exit 1 and stay distinct from property failures") {
  CHECK(run_cli("szabo-charpoly /nonexistent.geo").status == 1);
  CHECK(run_cli("szabo-charpoly " + fixture("example36.geo") + " --twist").status == 1);

  std::string tmp = "/tmp/szabo_cli_bad.geo";
  {
    std::ofstream out(tmp);
    out << "dim = 2\n[connection]\nG[1,1,1] = u1++u2\n";
  }
  RunResult bad = run_cli("szabo-charpoly " + tmp);
  CHECK(bad.status == 1);
  CHECK(bad.output.find("line 3") != std::string::npos);

  CHECK(run_cli("no-such-subcommand").status == 1);
}

TEST_CASE("cli check table") {
  RunResult zero = run_cli("check " + fixture("zero.geo") + " --extend");
  CHECK(zero.status == 0);
  CHECK(zero.output.find("affine_szabo_nilpotent") != std::string::npos);
  CHECK(zero.output.find("FAIL") == std::string::npos);

  RunResult w = run_cli("check " + fixture("non-szabo-witness.geo"));
  CHECK(w.status == 2);
  CHECK(w.output.find("FAIL") != std::string::npos);
}

TEST_CASE("cli json curvature output round-trips") {
  RunResult r = run_cli("curvature " + fixture("example36.geo") + " --format json");
  REQUIRE(r.status == 0);
  ordered_json j = ordered_json::parse(r.output);
  CHECK(j["command"] == "curvature");
  CHECK(j["certificates"].is_array());
  CHECK(j["checks"].is_array());

  ProblemFile pf = load_problem(fixture("example36.geo"));
  TensorField rm = curvature(*pf.connection);
  std::size_t nonzero = 0;
  rm.for_each_index([&](std::span<const std::size_t> idx) {
    if (!rm.at(idx).is_zero()) ++nonzero;
  });
  REQUIRE(j["components"].size() == nonzero);
  for (const auto& comp : j["components"]) {
    std::vector<std::size_t> idx;
    for (const auto& v : comp["index"]) idx.push_back(v.get<std::size_t>() - 1);
    Polynomial reparsed = parse_expr(comp["value"].get<std::string>(), *pf.vars);
    CHECK(reparsed == rm.at(idx));
  }
}

TEST_CASE("cli json check report has the stable schema") {
  RunResult r = run_cli("check " + fixture("example36.geo") + " --extend --format json");
  REQUIRE(r.status == 0);
  ordered_json j = ordered_json::parse(r.output);
  auto it = j.begin();
  CHECK(it.key() == "command");
  CHECK((++it).key() == "input");
  CHECK((++it).key() == "certificates");
  CHECK((++it).key() == "checks");
  for (const auto& c : j["certificates"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("nilpotent"));
    CHECK(c.contains("coeffs"));
    for (const auto& coeff : c["coeffs"]) CHECK(coeff.get<std::string>() == "0");
  }
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("pass"));
    CHECK(c.contains("witness"));
  }
}

TEST_CASE("cli ricci and numcheck") {
  RunResult ric0 = run_cli("ricci " + fixture("example36.geo"));
  CHECK(ric0.status == 0);
  CHECK(ric0.output.find("(all components zero)") != std::string::npos);

  RunResult ric = run_cli("ricci " + fixture("non-szabo-witness.geo"));
  CHECK(ric.status == 0);
  CHECK(ric.output.find("Ric[1,2] = -1") != std::string::npos);

  RunResult num = run_cli("numcheck " + fixture("example36.geo") + " --seed 7 --count 20");
  CHECK(num.status == 0);
  CHECK(num.output.find("all samples passed") != std::string::npos);
  RunResult num2 = run_cli("numcheck " + fixture("example36.geo") + " --seed 7 --count 20");
  CHECK(num2.output == num.output);  // deterministic for a fixed seed
}
