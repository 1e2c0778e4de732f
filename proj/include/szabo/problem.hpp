#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "szabo/connection.hpp"
#include "szabo/extension.hpp"
#include "szabo/parse.hpp"
#include "szabo/vartable.hpp"

namespace szabo {

// Error in a declarative problem file, annotated with its line number.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Declarative problem description, line oriented:
//
//   name = example
//   description = free text
//   dim = 3
//   coordinates = u1 u2 u3
//   [connection]
//   G[1,1,2] = u1*u3        # Gamma^2_{11}, output index listed last
//   [twist]
//   phi[1,1] = u2
//
// Unlisted Gamma/phi entries are zero.  The session variable table is
// base coordinates, fiber coordinates, vector components a1..a_{2n},
// and the spectral variable L, in that order.
struct ProblemFile {
  std::string name;
  std::string description;
  std::size_t dim = 0;
  std::vector<std::string> coordinates;
  std::optional<VarTable> vars;
  std::optional<AffineConnection> connection;
  std::optional<SymmetricBilinear> twist;
  bool has_twist = false;

  std::size_t nvars() const { return vars->size(); }
  std::size_t alpha_first() const { return 2 * dim; }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Parses "X[i,j,...]" and returns the 1-based indices.
inline std::vector<std::size_t> parse_indices(const std::string& key, const std::string& head,
                                              std::size_t nidx, std::size_t dim,
                                              std::size_t lineno) {
  if (key.size() < head.size() + 2 || key.compare(0, head.size(), head) != 0 ||
      key[head.size()] != '[' || key.back() != ']')
    throw ProblemError("malformed entry key '" + key + "'", lineno);
  std::string inner = key.substr(head.size() + 1, key.size() - head.size() - 2);
  std::vector<std::size_t> idx;
  std::stringstream ss(inner);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    try {
      std::size_t v = std::stoul(part);
      if (v < 1 || v > dim) throw ProblemError("index out of range in '" + key + "'", lineno);
      idx.push_back(v - 1);
    } catch (const ProblemError&) {
      throw;
    } catch (...) {
      throw ProblemError("bad index '" + part + "' in '" + key + "'", lineno);
    }
  }
  if (idx.size() != nidx)
    throw ProblemError("expected " + std::to_string(nidx) + " indices in '" + key + "'", lineno);
  return idx;
}

}  // namespace detail

inline ProblemFile parse_problem(std::istream& in) {
  ProblemFile pf;
  std::string line;
  std::size_t lineno = 0;
  enum class Section { Header, Connection, Twist };
  Section section = Section::Header;

  struct RawEntry {
    std::vector<std::size_t> idx;
    std::string expr;
    std::size_t lineno;
    bool is_twist;
  };
  std::vector<RawEntry> entries;

  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line == "[connection]") {
      section = Section::Connection;
      continue;
    }
    if (line == "[twist]") {
      section = Section::Twist;
      pf.has_twist = true;
      continue;
    }
    if (line.front() == '[') throw ProblemError("unknown section " + line, lineno);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ProblemError("expected key = value", lineno);
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    switch (section) {
      case Section::Header:
        if (key == "name") {
          pf.name = value;
        } else if (key == "description") {
          pf.description = value;
        } else if (key == "dim") {
          try {
            pf.dim = std::stoul(value);
          } catch (...) {
            throw ProblemError("bad dimension '" + value + "'", lineno);
          }
          if (pf.dim < 1 || pf.dim > 6) throw ProblemError("dimension must be in 1..6", lineno);
        } else if (key == "coordinates") {
          std::stringstream ss(value);
          std::string tok;
          while (ss >> tok) pf.coordinates.push_back(tok);
        } else {
          throw ProblemError("unknown header key '" + key + "'", lineno);
        }
        break;
      case Section::Connection:
        entries.push_back({detail::parse_indices(key, "G", 3, pf.dim, lineno), value, lineno,
                           false});
        break;
      case Section::Twist:
        entries.push_back({detail::parse_indices(key, "phi", 2, pf.dim, lineno), value, lineno,
                           true});
        break;
    }
  }

  if (pf.dim == 0) throw ProblemError("missing dim", lineno);
  if (pf.coordinates.empty())
    for (std::size_t i = 1; i <= pf.dim; ++i) pf.coordinates.push_back("u" + std::to_string(i));
  if (pf.coordinates.size() != pf.dim)
    throw ProblemError("coordinate count does not match dim", lineno);

  // Session table: base coords, fiber coords, vector components, L.
  std::vector<std::string> names = pf.coordinates;
  bool canonical_u = true;
  for (std::size_t i = 0; i < pf.dim; ++i)
    if (pf.coordinates[i] != "u" + std::to_string(i + 1)) canonical_u = false;
  for (std::size_t i = 1; i <= pf.dim; ++i)
    names.push_back(canonical_u ? "u" + std::to_string(pf.dim + i)
                                : pf.coordinates[i - 1] + "p");
  for (std::size_t i = 1; i <= 2 * pf.dim; ++i) names.push_back("a" + std::to_string(i));
  names.push_back("L");
  try {
    pf.vars.emplace(names);
  } catch (const std::invalid_argument& e) {
    throw ProblemError(e.what(), 0);
  }

  // Expressions may use the declared base coordinates only.
  VarTable base_vars(
      std::vector<std::string>(pf.coordinates.begin(), pf.coordinates.end()));
  AffineConnection conn(pf.dim, pf.vars->size());
  SymmetricBilinear twist(pf.dim, pf.vars->size());
  auto lift = [&](const std::string& text, std::size_t lineno_) {
    try {
      Polynomial small = parse_expr(text, base_vars);
      Polynomial big(pf.vars->size());
      for (const auto& [e, c] : small.terms()) {
        ExpVec be(pf.vars->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) be[i] = e[i];
        big.add_term(std::move(be), c);
      }
      return big;
    } catch (const ParseError& e) {
      throw ProblemError(e.what(), lineno_);
    }
  };
  for (const auto& entry : entries) {
    Polynomial value = lift(entry.expr, entry.lineno);
    if (entry.is_twist) {
      const Polynomial& prev = twist.at(entry.idx[0], entry.idx[1]);
      if (!prev.is_zero() && !(prev == value))
        throw ProblemError("conflicting values for symmetric phi entry", entry.lineno);
      twist.set(entry.idx[0], entry.idx[1], value);
    } else {
      const Polynomial& prev = conn.gamma(entry.idx[2], entry.idx[0], entry.idx[1]);
      if (!prev.is_zero() && !(prev == value))
        throw ProblemError("conflicting values for symmetric Gamma entry", entry.lineno);
      conn.set_gamma(entry.idx[2], entry.idx[0], entry.idx[1], value);
    }
  }
  pf.connection = std::move(conn);
  if (pf.has_twist) pf.twist = std::move(twist);
  return pf;
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  return parse_problem(in);
}

}  // namespace szabo
