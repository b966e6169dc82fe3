#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gpcat {

/// Outcome of a validation pass.  `violations` are failures; `notes` are
/// informational observations that do not affect the verdict.  Storage is
/// capped so that a badly corrupted input cannot blow up memory; the full
/// count is always kept in `total_violations`.
struct Report {
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  std::size_t total_violations = 0;
  std::size_t max_stored = 1000;

  bool passed() const { return total_violations == 0; }

  void fail(std::string v) {
    ++total_violations;
    if (violations.size() < max_stored) violations.push_back(std::move(v));
  }

  void note(std::string n) { notes.push_back(std::move(n)); }

  void merge(const Report& other) {
    total_violations += other.total_violations;
    for (const auto& v : other.violations)
      if (violations.size() < max_stored) violations.push_back(v);
    for (const auto& n : other.notes) notes.push_back(n);
  }

  std::string summary() const {
    if (passed()) return "pass";
    std::string s = "fail (" + std::to_string(total_violations) + " violations)";
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i)
      s += "\n  " + violations[i];
    return s;
  }
};

}  // namespace gpcat
