#pragma once

#include <string>
#include <vector>

namespace bbcrystal {

struct Report {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const Report& o, const std::string& prefix = "") {
    for (const auto& v : o.violations) violations.push_back(prefix + v);
  }
};

}  // namespace bbcrystal
