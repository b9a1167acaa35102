#include "nchardy/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace nchardy {

int Report::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.passed; }));
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  wall_seconds += other.wall_seconds;
}

nlohmann::json Report::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j{{"name", c.name},
                     {"anchor", c.anchor},
                     {"status", c.passed ? "pass" : "fail"},
                     {"residual", c.residual},
                     {"threshold", c.threshold},
                     {"relation", c.expect_above ? ">" : "<="},
                     {"trials", c.trials}};
    if (!c.witness.is_null()) {
      j["witness"] = c.witness;
    }
    list.push_back(std::move(j));
  }
  return {{"checks", list},
          {"summary", {{"passed", passed()}, {"failed", failed()}, {"total", checks.size()}}},
          {"wall_seconds", wall_seconds}};
}

std::string Report::to_text() const {
  std::ostringstream out;
  char line[64];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%.3e %s %.1e", c.residual, c.expect_above ? ">" : "<=", c.threshold);
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << c.anchor << "] residual " << line;
    if (c.trials > 0) {
      out << " over " << c.trials << " trials";
    }
    out << "\n";
    if (!c.passed && !c.witness.is_null()) {
      out << "     witness: " << c.witness.dump() << "\n";
    }
  }
  std::snprintf(line, sizeof line, "%.2f", wall_seconds);
  out << passed() << " passed, " << failed() << " failed in " << line << " s\n";
  return out.str();
}

} // namespace nchardy
