#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace szabo {

// Ordered variable table.  The order is fixed for the lifetime of a
// session: the lexicographic monomial order (and hence every canonical
// form) depends on it.  The spectral variable "L", when present, must
// be last.
class VarTable {
 public:
  explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const std::string& n = names_[i];
      if (n.empty()) throw std::invalid_argument("VarTable: empty variable name");
      if (!index_.emplace(n, i).second)
        throw std::invalid_argument("VarTable: duplicate variable '" + n + "'");
      if (n == "L" && i + 1 != names_.size())
        throw std::invalid_argument("VarTable: spectral variable L must be last");
    }
  }

  std::size_t size() const { return names_.size(); }

  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw std::invalid_argument("VarTable: unknown variable '" + std::string(name) + "'");
    return *i;
  }

  bool operator==(const VarTable& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace szabo
