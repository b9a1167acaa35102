#include "nchardy/harness/instance.hpp"

#include <fstream>
#include <sstream>

#include "nchardy/random.hpp"

namespace nchardy {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw UsageError(field + ": " + what);
}

const json& member(const json& j, const std::string& key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) {
    bad(field, "missing field '" + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) {
    bad(field, "expected a number");
  }
  return j.get<double>();
}

int positive_int(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    bad(field, "expected a positive integer");
  }
  return j.get<int>();
}

Complex complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  if (!j.is_array() || j.size() != 2) {
    bad(field, "expected [re, im]");
  }
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

FinVNAlgebra algebra_of(const std::vector<Block>& blocks, double tolerance, const std::string& field) {
  try {
    return FinVNAlgebra(blocks, tolerance);
  } catch (const Error& err) {
    bad(field, err.what());
  }
}

} // namespace

FinVNAlgebra InstanceSpec::algebra() const { return FinVNAlgebra(blocks, tolerance); }

TracialSubalgebra InstanceSpec::subalgebra() const {
  const FinVNAlgebra m = algebra();
  if (nest) {
    return build_nest_subalgebra(m, *nest);
  }
  return build_from_basis(m, generators);
}

Subspace InstanceSpec::subspace(const std::string& name) const {
  const auto it = subspaces.find(name);
  if (it == subspaces.end()) {
    throw UsageError("subspaces: no subspace named '" + name + "'");
  }
  const TracialSubalgebra a = subalgebra();
  return right_module_span(from_generators(a.ambient(), it->second), a.a_basis());
}

json element_to_json(const AlgebraElement& x) {
  json blocks = json::array();
  for (const auto& b : x.blocks()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        row.push_back(json::array({b(i, j).real(), b(i, j).imag()}));
      }
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return blocks;
}

AlgebraElement element_from_json(const json& j, const FinVNAlgebra& m, const std::string& field) {
  if (!j.is_array() || j.size() != m.num_blocks()) {
    bad(field, "expected a list of " + std::to_string(m.num_blocks()) + " blocks");
  }
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    const std::string bf = field + "[" + std::to_string(k) + "]";
    const int n = m.block_dim(k);
    const json& rows = j[k];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
      bad(bf, "expected " + std::to_string(n) + " rows");
    }
    Matrix b(n, n);
    for (int r = 0; r < n; ++r) {
      const std::string rf = bf + "[" + std::to_string(r) + "]";
      if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(n)) {
        bad(rf, "expected " + std::to_string(n) + " entries");
      }
      for (int c = 0; c < n; ++c) {
        b(r, c) = complex_from_json(rows[r][c], rf + "[" + std::to_string(c) + "]");
      }
    }
    blocks.push_back(std::move(b));
  }
  return AlgebraElement(std::move(blocks));
}

json to_json(const InstanceSpec& spec) {
  json j;
  json blocks = json::array();
  for (const auto& b : spec.blocks) {
    blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
  }
  j["algebra"] = {{"blocks", blocks}};
  j["tolerance"] = spec.tolerance;
  j["seed"] = spec.seed;
  if (spec.nest) {
    j["subalgebra"] = {{"nest", spec.nest->atoms}};
  } else {
    json gens = json::array();
    for (const auto& g : spec.generators) {
      gens.push_back(element_to_json(g));
    }
    j["subalgebra"] = {{"generators", gens}};
  }
  json subspaces = json::object();
  for (const auto& [name, gens] : spec.subspaces) {
    json list = json::array();
    for (const auto& g : gens) {
      list.push_back(element_to_json(g));
    }
    subspaces[name] = std::move(list);
  }
  j["subspaces"] = std::move(subspaces);
  json elements = json::object();
  for (const auto& [name, x] : spec.elements) {
    elements[name] = element_to_json(x);
  }
  j["elements"] = std::move(elements);
  return j;
}

InstanceSpec instance_from_json(const json& j) {
  if (!j.is_object()) {
    bad("<root>", "expected an object");
  }
  InstanceSpec spec;
  const json& algebra = member(j, "algebra", "<root>");
  const json& blocks = member(algebra, "blocks", "algebra");
  if (!blocks.is_array() || blocks.empty()) {
    bad("algebra.blocks", "expected a nonempty list");
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string field = "algebra.blocks[" + std::to_string(k) + "]";
    Block b;
    b.dim = positive_int(member(blocks[k], "dim", field), field + ".dim");
    b.weight = blocks[k].contains("weight") ? number(blocks[k]["weight"], field + ".weight") : -1.0;
    spec.blocks.push_back(b);
  }
  // Missing weights default to the uniform trace.
  int total = 0;
  for (const auto& b : spec.blocks) {
    total += b.dim;
  }
  for (auto& b : spec.blocks) {
    if (b.weight < 0.0) {
      b.weight = 1.0 / total;
    }
  }
  if (j.contains("tolerance")) {
    spec.tolerance = number(j["tolerance"], "tolerance");
    if (!(spec.tolerance > 0.0)) {
      bad("tolerance", "expected a positive number");
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      bad("seed", "expected a nonnegative integer");
    }
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  const FinVNAlgebra m = algebra_of(spec.blocks, spec.tolerance, "algebra");

  const json sub = j.contains("subalgebra") ? j["subalgebra"] : json{{"nest", nullptr}};
  if (sub.contains("nest") == sub.contains("generators")) {
    bad("subalgebra", "expected exactly one of 'nest' or 'generators'");
  }
  if (sub.contains("nest")) {
    if (sub["nest"].is_null()) {
      spec.nest = NestSpec::upper_triangular(m);
    } else {
      NestSpec nest;
      try {
        nest.atoms = sub["nest"].get<std::vector<std::vector<int>>>();
      } catch (const json::exception&) {
        bad("subalgebra.nest", "expected a list of atom-size lists");
      }
      try {
        nest.validate(m);
      } catch (const Error& err) {
        bad("subalgebra.nest", err.what());
      }
      spec.nest = std::move(nest);
    }
  } else {
    const json& gens = sub["generators"];
    if (!gens.is_array()) {
      bad("subalgebra.generators", "expected a list of elements");
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      spec.generators.push_back(element_from_json(gens[i], m, "subalgebra.generators[" + std::to_string(i) + "]"));
    }
  }

  if (j.contains("subspaces")) {
    if (!j["subspaces"].is_object()) {
      bad("subspaces", "expected an object of named generator lists");
    }
    for (const auto& [name, list] : j["subspaces"].items()) {
      const std::string field = "subspaces." + name;
      if (!list.is_array()) {
        bad(field, "expected a list of elements");
      }
      std::vector<AlgebraElement> gens;
      for (std::size_t i = 0; i < list.size(); ++i) {
        gens.push_back(element_from_json(list[i], m, field + "[" + std::to_string(i) + "]"));
      }
      spec.subspaces[name] = std::move(gens);
    }
  }
  if (j.contains("elements")) {
    if (!j["elements"].is_object()) {
      bad("elements", "expected an object of named elements");
    }
    for (const auto& [name, x] : j["elements"].items()) {
      spec.elements.emplace(name, element_from_json(x, m, "elements." + name));
    }
  }
  return spec;
}

InstanceSpec parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw UsageError(std::string("instance file: ") + err.what());
  }
  return instance_from_json(j);
}

InstanceSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError(path + ": cannot open instance file");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const UsageError& err) {
    throw UsageError(path + ": " + err.what());
  }
}

std::string emit_instance(const InstanceSpec& spec) { return to_json(spec).dump(2) + "\n"; }

InstanceSpec random_instance(std::uint64_t seed, int max_blocks, int max_dim, double tolerance) {
  Rng rng(seed);
  const FinVNAlgebra m = random_algebra(rng, max_blocks, max_dim, tolerance);
  InstanceSpec spec;
  spec.blocks = m.blocks();
  spec.tolerance = tolerance;
  spec.seed = seed;
  spec.nest = random_nest(m, rng);
  const int count = 1 + static_cast<int>(rng() % 3);
  std::vector<AlgebraElement> gens;
  for (int i = 0; i < count; ++i) {
    gens.push_back(random_low_rank(m, rng, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m.total_dim()))));
  }
  spec.subspaces["K"] = std::move(gens);
  spec.elements["f"] = random_positive_definite(m, rng);
  return spec;
}

} // namespace nchardy
