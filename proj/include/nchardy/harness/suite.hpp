#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nchardy/harness/instance.hpp"
#include "nchardy/harness/report.hpp"

namespace nchardy {

struct SuiteOptions {
  /// Trials per randomized check; negative selects each suite's default.
  int trials = -1;
  /// Lᵖ exponents for the norm suites; empty selects each suite's default.
  std::vector<double> ps;
  /// Overrides the instance seed.
  std::optional<std::uint64_t> seed;
};

/// decomposition, uniqueness, column-norm, theta, factorization,
/// standard-case, istr, negative-control, remark2-uppertriangular,
/// remark4-orthogonality.
const std::vector<std::string>& suite_names();

/// Runs the named suites in order. Random instances are nest algebras with
/// at most 3 blocks of size at most 5, seeded from the instance (or option)
/// seed; the instance's tolerance sets every residual threshold except the
/// column-sum one, which is fixed at 1e-10 relative. Throws UsageError for an
/// unknown suite name before running anything.
Report run_suite(const InstanceSpec& spec, const std::vector<std::string>& suites, const SuiteOptions& options = {});

} // namespace nchardy
