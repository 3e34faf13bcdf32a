#pragma once

#include <string>
#include <vector>

namespace overlap {

/// One evaluated inequality `lhs <= rhs` (or a named check with two sides).
struct ReportRow {
  std::string check;
  std::string lhs;
  std::string rhs;
  bool pass = true;
  /// Non-binding rows are reported but do not affect `Report::passed`.
  bool binding = true;
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& row : rows) {
      if (row.binding && !row.pass) return false;
    }
    return true;
  }

  void add(std::string check, std::string lhs, std::string rhs, bool pass, bool binding = true) {
    rows.push_back({std::move(check), std::move(lhs), std::move(rhs), pass, binding});
  }
};

}  // namespace overlap
