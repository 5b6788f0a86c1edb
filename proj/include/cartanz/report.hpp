#ifndef CARTANZ_REPORT_HPP
#define CARTANZ_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace cartanz {

/// One named verification outcome. `detail` carries the witness on success or
/// the first counterexample on failure.
struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
  std::size_t cases = 0;
};

struct Report {
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

inline void to_json(nlohmann::json& j, const Check& c) {
  j = nlohmann::json{{"check", c.name}, {"status", c.passed ? "PASS" : "FAIL"}, {"cases", c.cases}, {"detail", c.detail}};
}

inline void to_json(nlohmann::json& j, const Report& r) {
  j = nlohmann::json::array();
  for (const auto& c : r.checks) j.push_back(c);
}

}  // namespace cartanz

#endif
