#pragma once

// Instance files: a JSON tree describing an algebra, a tracial subalgebra,
// named subspaces and named elements. Complex numbers are [re, im] pairs and
// each element is a list of blocks, each a row-major nested array.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nchardy/tracial.hpp"

namespace nchardy {

struct InstanceSpec {
  std::vector<Block> blocks;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  /// Exactly one of nest / generators describes the subalgebra.
  std::optional<NestSpec> nest;
  std::vector<AlgebraElement> generators;
  /// Each named subspace is given by generators; it denotes the smallest
  /// invariant subspace containing them.
  std::map<std::string, std::vector<AlgebraElement>> subspaces;
  std::map<std::string, AlgebraElement> elements;

  bool operator==(const InstanceSpec&) const = default;

  FinVNAlgebra algebra() const;
  TracialSubalgebra subalgebra() const;
  Subspace subspace(const std::string& name) const;
};

nlohmann::json element_to_json(const AlgebraElement& x);
/// `field` prefixes error messages.
AlgebraElement element_from_json(const nlohmann::json& j, const FinVNAlgebra& m, const std::string& field);

nlohmann::json to_json(const InstanceSpec& spec);
/// Throws UsageError naming the offending field.
InstanceSpec instance_from_json(const nlohmann::json& j);
/// Parses text; syntax errors carry line and column.
InstanceSpec parse_instance(const std::string& text);
InstanceSpec load_instance(const std::string& path);
std::string emit_instance(const InstanceSpec& spec);

/// A random nest instance with one invariant subspace "K" and one element
/// "f", deterministic per seed.
InstanceSpec random_instance(std::uint64_t seed, int max_blocks, int max_dim, double tolerance);

} // namespace nchardy
