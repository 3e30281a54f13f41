#pragma once

#include <string>
#include <vector>

namespace qteich {

struct CheckResult {
  std::string id;     // stable key: suite/check/surface
  std::string anchor; // the mathematical statement being verified
  bool pass = false;
  std::string detail; // witness context for failures (seed included); may be empty
  double ms = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  std::vector<std::string> config_lines;

  void add(CheckResult r) { checks.push_back(std::move(r)); }
  int total() const { return static_cast<int>(checks.size()); }
  int failures() const;
  bool all_pass() const { return failures() == 0; }

  /// Line-oriented structured text, one record per check, sorted by id.
  /// Identical configs (and seeds) give byte-identical output except for the
  /// time_ms field, which can be suppressed.
  std::string render(bool include_timing = true) const;
};

} // namespace qteich
