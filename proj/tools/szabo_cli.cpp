// Command-line front end: reads declarative problem files describing a
// torsion-free affine connection (and an optional symmetric twist), and
// reports curvature tensors, Ricci tensors, characteristic-polynomial
// nilpotency certificates, a structured check suite, and a numeric
// sampling oracle.  Exit codes: 0 success, 1 tool/parse error, 2 the
// queried property does not hold.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "szabo/checks.hpp"
#include "szabo/connection.hpp"
#include "szabo/extension.hpp"
#include "szabo/numcheck.hpp"
#include "szabo/parse.hpp"
#include "szabo/problem.hpp"
#include "szabo/szabo_op.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace szabo;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPropertyFails = 2;

struct Options {
  std::string file;
  std::string format = "text";
  bool extend = false;
  bool use_twist = false;
  unsigned long seed = 1;
  int count = 100;
};

json json_skeleton(const std::string& command, const Options& opt) {
  json j;
  j["command"] = command;
  j["input"] = opt.file;
  j["certificates"] = json::array();
  j["checks"] = json::array();
  return j;
}

json certificate_json(const NamedCertificate& nc, const VarTable& vars) {
  json c;
  c["name"] = nc.name;
  c["nilpotent"] = nc.cert.nilpotent;
  json coeffs = json::array();
  for (const auto& p : nc.cert.coeffs) coeffs.push_back(to_string(p, vars));
  c["coeffs"] = std::move(coeffs);
  return c;
}

// Index string like "R[1,3;2]" with the upper index after the semicolon.
std::string component_label(const std::string& head, std::span<const std::size_t> idx,
                            std::span<const Slot> variance) {
  std::string lower, upper;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    std::string& part = variance[s] == Slot::Upper ? upper : lower;
    if (!part.empty()) part += ",";
    part += std::to_string(idx[s] + 1);
  }
  std::string label = head + "[" + lower;
  if (!upper.empty()) label += ";" + upper;
  return label + "]";
}

void emit_tensor(const std::string& command, const std::string& head, const TensorField& t,
                 const VarTable& vars, const Options& opt) {
  std::vector<Slot> variance = t.variance();
  if (opt.format == "json") {
    json j = json_skeleton(command, opt);
    json comps = json::array();
    t.for_each_index([&](std::span<const std::size_t> idx) {
      if (t.at(idx).is_zero()) return;
      json c;
      json ji = json::array();
      for (std::size_t v : idx) ji.push_back(v + 1);
      c["index"] = std::move(ji);
      c["value"] = to_string(t.at(idx), vars);
      comps.push_back(std::move(c));
    });
    j["components"] = std::move(comps);
    std::cout << j.dump(2) << "\n";
    return;
  }
  bool any = false;
  t.for_each_index([&](std::span<const std::size_t> idx) {
    if (t.at(idx).is_zero()) return;
    any = true;
    std::cout << component_label(head, idx, variance) << " = " << to_string(t.at(idx), vars)
              << "\n";
  });
  if (!any) std::cout << "(all components zero)\n";
}

// Builds the connection whose curvature/Ricci is requested: the base
// connection itself, or the Levi-Civita connection of its extension.
AffineConnection select_connection(const ProblemFile& pf, const Options& opt) {
  if (!opt.extend) return *pf.connection;
  std::optional<SymmetricBilinear> twist;
  if (opt.use_twist) {
    if (!pf.has_twist) throw std::runtime_error("--twist given but file has no [twist] section");
    twist = pf.twist;
  }
  return levi_civita_closed_form(*pf.connection, twist);
}

int cmd_curvature(const Options& opt) {
  ProblemFile pf = load_problem(opt.file);
  AffineConnection conn = select_connection(pf, opt);
  emit_tensor("curvature", "R", curvature(conn), *pf.vars, opt);
  return kExitOk;
}

int cmd_ricci(const Options& opt) {
  ProblemFile pf = load_problem(opt.file);
  AffineConnection conn = select_connection(pf, opt);
  emit_tensor("ricci", "Ric", ricci(conn), *pf.vars, opt);
  return kExitOk;
}

int cmd_szabo_charpoly(const Options& opt) {
  ProblemFile pf = load_problem(opt.file);
  NamedCertificate nc;
  if (opt.extend) {
    std::optional<SymmetricBilinear> twist;
    if (opt.use_twist) {
      if (!pf.has_twist) throw std::runtime_error("--twist given but file has no [twist] section");
      twist = pf.twist;
    }
    ExtensionMetric metric = build_extension(*pf.connection, twist);
    nc = {"extension_szabo", is_pseudo_szabo_nilpotent(metric, pf.alpha_first())};
  } else {
    nc = {"affine_szabo", is_affine_szabo(*pf.connection, pf.alpha_first())};
  }
  if (opt.format == "json") {
    json j = json_skeleton("szabo-charpoly", opt);
    j["certificates"].push_back(certificate_json(nc, *pf.vars));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "P(L) = " << describe_charpoly(nc.cert, *pf.vars)
              << "; nilpotent: " << (nc.cert.nilpotent ? "yes" : "no") << "\n";
  }
  return nc.cert.nilpotent ? kExitOk : kExitPropertyFails;
}

int cmd_check(const Options& opt) {
  ProblemFile pf = load_problem(opt.file);
  bool use_twist = opt.use_twist;
  if (use_twist && !pf.has_twist)
    throw std::runtime_error("--twist given but file has no [twist] section");
  CheckSuite suite = run_check_suite(pf, opt.extend, use_twist);
  if (opt.format == "json") {
    json j = json_skeleton("check", opt);
    for (const auto& nc : suite.certificates)
      j["certificates"].push_back(certificate_json(nc, *pf.vars));
    for (const auto& c : suite.checks) {
      json jc;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      jc["witness"] = c.witness;
      j["checks"].push_back(std::move(jc));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : suite.checks) {
      std::printf("%-32s %s", c.name.c_str(), c.pass ? "pass" : "FAIL");
      if (!c.witness.empty()) std::printf("  [%s]", c.witness.c_str());
      std::printf("\n");
    }
  }
  return suite.all_pass() ? kExitOk : kExitPropertyFails;
}

int cmd_numcheck(const Options& opt) {
  ProblemFile pf = load_problem(opt.file);
  SamplePlan plan;
  plan.seed = opt.seed;
  plan.count = opt.count;
  Report rep = run_numcheck(pf, plan);
  if (opt.format == "json") {
    json j = json_skeleton("numcheck", opt);
    json checks = json::array();
    for (const auto& line : rep.lines) {
      json c;
      bool pass = line.rfind("ok", 0) == 0;
      c["name"] = line.substr(line.find_first_not_of(" ", pass ? 2 : 4));
      c["pass"] = pass;
      c["witness"] = "";
      checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rep.to_string();
    std::cout << (rep.failures == 0 ? "all samples passed\n"
                                    : std::to_string(rep.failures) + " sample(s) FAILED\n");
  }
  return rep.empty_of_failures() ? kExitOk : kExitPropertyFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic curvature and nilpotency certificates for affine connections "
               "and their cotangent-bundle extension metrics"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_extend) {
    sub->add_option("file", opt.file, "problem file")->required();
    sub->add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_extend) {
      sub->add_flag("--extend", opt.extend,
                    "work on the cotangent-bundle extension metric instead of the base");
      sub->add_flag("--twist", opt.use_twist, "apply the file's [twist] section (implies a "
                                              "twisted extension; requires --extend)");
    }
  };

  CLI::App* curv = app.add_subcommand("curvature", "print nonzero curvature components");
  add_common(curv, true);
  CLI::App* ric = app.add_subcommand("ricci", "print nonzero Ricci components");
  add_common(ric, true);
  CLI::App* chp = app.add_subcommand(
      "szabo-charpoly", "characteristic polynomial of the Szabo operator; exit 2 if not nilpotent");
  add_common(chp, true);
  CLI::App* chk = app.add_subcommand("check", "run the full check suite; exit 2 on failure");
  add_common(chk, true);
  CLI::App* num = app.add_subcommand("numcheck", "numeric sampling oracle");
  add_common(num, false);
  num->add_option("--seed", opt.seed, "sampling seed");
  num->add_option("--count", opt.count, "number of finite-difference samples")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (opt.use_twist && !opt.extend) throw std::runtime_error("--twist requires --extend");
    if (curv->parsed()) return cmd_curvature(opt);
    if (ric->parsed()) return cmd_ricci(opt);
    if (chp->parsed()) return cmd_szabo_charpoly(opt);
    if (chk->parsed()) return cmd_check(opt);
    if (num->parsed()) return cmd_numcheck(opt);
  } catch (const ProblemError& e) {
    std::cerr << "error: " << opt.file << ": " << e.what() << "\n";
    return kExitError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
