#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nchardy {

struct Check {
  std::string name;
  /// Short description of the mathematical statement being checked.
  std::string anchor;
  bool passed = true;
  /// Worst residual observed, compared against `threshold`.
  double residual = 0.0;
  double threshold = 0.0;
  /// Searches that must find something pass when residual > threshold.
  bool expect_above = false;
  int trials = 0;
  /// Machine-readable data: the failing instance for failed checks, the
  /// constructed witness for searches that are expected to find one.
  nlohmann::json witness;
};

struct Report {
  std::vector<Check> checks;
  double wall_seconds = 0.0;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }

  void append(const Report& other);
  nlohmann::json to_json() const;
  std::string to_text() const;
};

} // namespace nchardy
