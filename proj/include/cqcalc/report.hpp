#pragma once

// Outcome of an executable lemma check: named residual dimensions plus tables.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cqcalc {

namespace detail {
inline std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }
}  // namespace detail

struct VerificationReport {
  struct Check {
    std::string name;
    std::size_t residual = 0;  // 0 means the check holds
  };

  std::string lemma;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Check> checks;
  std::map<std::string, std::vector<std::size_t>> tables;

  void check(std::string name, std::size_t residual) { checks.push_back({std::move(name), residual}); }
  void check(std::string name, bool ok) { check(std::move(name), static_cast<std::size_t>(ok ? 0 : 1)); }
  void input(std::string key, std::string value) { inputs.emplace_back(std::move(key), std::move(value)); }
  void input(std::string key, std::size_t value) { input(std::move(key), std::to_string(value)); }

  bool pass() const {
    for (const auto& c : checks)
      if (c.residual != 0) return false;
    return !checks.empty();
  }
};

}  // namespace cqcalc
