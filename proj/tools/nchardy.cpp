// Command-line front end: decompose, factorize, check-subdiagonal,
// property-suite and gen. Exit status is 0 iff every check passes, 1 on a
// failed check or numerical error, 2 on a usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "nchardy/factorization.hpp"
#include "nchardy/harness/instance.hpp"
#include "nchardy/harness/suite.hpp"

using namespace nchardy;
using nlohmann::json;

namespace {

struct Common {
  double tol = kDefaultTolerance;
  bool tol_set = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

std::vector<double> parse_ps(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s)) {
    try {
      std::size_t used = 0;
      const double p = std::stod(item, &used);
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
      out.push_back(p);
    } catch (const std::logic_error&) {
      throw UsageError("--p: cannot parse '" + item + "'");
    }
  }
  return out;
}

InstanceSpec load(const std::string& path, const Common& c) {
  InstanceSpec spec = load_instance(path);
  if (c.tol_set) {
    spec.tolerance = c.tol;
  }
  if (c.seed) {
    spec.seed = *c.seed;
  }
  return spec;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw UsageError("--out: cannot write '" + path + "'");
  }
  out << text;
}

int finish(Report& report, const Common& c, double seconds) {
  report.wall_seconds = seconds;
  std::cout << report.to_text();
  if (!c.out.empty()) {
    write_file(c.out, report.to_json().dump(2) + "\n");
  }
  return report.ok() ? 0 : 1;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::string> selected(const std::map<std::string, std::vector<AlgebraElement>>& named,
                                  const std::string& only) {
  std::vector<std::string> out;
  for (const auto& [name, v] : named) {
    if (only.empty() || only == name) {
      out.push_back(name);
    }
  }
  return out;
}

int decompose(const std::string& path, const std::string& only, const Common& c) {
  const auto start = std::chrono::steady_clock::now();
  const InstanceSpec spec = load(path, c);
  if (!only.empty() && !spec.subspaces.contains(only)) {
    throw UsageError("--subspace: no subspace named '" + only + "'");
  }
  const TracialSubalgebra a = spec.subalgebra();
  Report report;
  for (const auto& name : selected(spec.subspaces, only)) {
    const Subspace k = spec.subspace(name);
    const auto dec = type_decomposition(k, a);
    const auto r = decomposition_residuals(dec, a);
    Check check;
    check.name = "decompose." + name;
    check.anchor = "column-sum decomposition of an invariant subspace";
    check.residual = r.max();
    check.threshold = 10 * spec.tolerance;
    check.passed = r.max() <= check.threshold && r.dimensions_add_up();
    check.trials = 1;
    json isometries = json::array();
    for (const auto& u : dec.isometries) {
      isometries.push_back(element_to_json(u));
    }
    check.witness = {{"type", to_string(classify(dec))},
                     {"dim_k", dec.k.dim()},
                     {"dim_z", dec.z.dim()},
                     {"dim_w", dec.wandering.w.dim()},
                     {"isometries", isometries}};
    std::cout << name << ": " << to_string(classify(dec)) << ", dim K = " << dec.k.dim()
              << ", dim Z = " << dec.z.dim() << ", dim W = " << dec.wandering.w.dim() << ", "
              << dec.isometries.size() << " partial isometries\n";
    report.checks.push_back(std::move(check));
  }
  return finish(report, c, elapsed(start));
}

int factorize(const std::string& path, const std::string& only, const Common& c) {
  const auto start = std::chrono::steady_clock::now();
  const InstanceSpec spec = load(path, c);
  if (!only.empty() && !spec.elements.contains(only)) {
    throw UsageError("--element: no element named '" + only + "'");
  }
  const TracialSubalgebra a = spec.subalgebra();
  Report report;
  for (const auto& [name, f] : spec.elements) {
    if (!only.empty() && name != only) {
      continue;
    }
    // Unitary inner factor when it exists, then the partial form for
    // wandering vectors, then the sum form for type 1 hulls.
    auto fac = bn_factorize(f, a);
    if (!fac && is_wandering_vector(f, a)) {
      fac = partial_bn_factorize(f, a);
    }
    if (!fac) {
      fac = inner_outer_sum(f, a);
    }
    Check check;
    check.name = "factorize." + name;
    check.anchor = "inner-outer factorization f = sum u_i h_i";
    check.threshold = 10 * spec.tolerance;
    check.trials = 1;
    if (!fac) {
      std::cout << name << ": no inner-outer factorization (hull is not type 1)\n";
      check.witness = {{"factorization", nullptr}};
    } else {
      const auto r = factorization_residuals(*fac, a);
      check.residual = r.max();
      check.passed = r.max() <= check.threshold;
      json pairs = json::array();
      for (const auto& [u, h] : fac->pairs) {
        pairs.push_back({{"u", element_to_json(u)}, {"h", element_to_json(h)}});
      }
      check.witness = {{"kind", to_string(fac->kind)}, {"pairs", pairs}};
      std::cout << name << ": " << to_string(fac->kind) << ", " << fac->pairs.size() << " pair(s)\n";
      for (const auto& p : pairs) {
        std::cout << "  u = " << p["u"].dump() << "\n  h = " << p["h"].dump() << "\n";
      }
    }
    report.checks.push_back(std::move(check));
  }
  return finish(report, c, elapsed(start));
}

int check_subdiagonal(const std::string& path, const Common& c) {
  const auto start = std::chrono::steady_clock::now();
  const InstanceSpec spec = load(path, c);
  Report report;
  Check tracial;
  tracial.name = "check.tracial";
  tracial.anchor = "Phi is multiplicative on A";
  tracial.threshold = 10 * spec.tolerance;
  tracial.trials = 1;
  try {
    const TracialSubalgebra a = spec.subalgebra();
    const auto r = tracial_residuals(a);
    tracial.residual = r.max();
    tracial.passed = r.max() <= tracial.threshold;
    report.checks.push_back(tracial);

    const bool maximal = a.is_maximal_subdiagonal();
    std::cout << "maximal-subdiagonal: " << (maximal ? "true" : "false") << "\n";
    std::cout << "dim A = " << a.algebra().dim() << ", dim D = " << a.diagonal().dim()
              << ", dim A0 = " << a.a0().dim() << ", dim M = " << a.ambient().dim() << "\n";
    Check msd;
    msd.name = "check.maximal-subdiagonal";
    msd.anchor = "A + A* is dense in M";
    msd.trials = 1;
    msd.passed = maximal;
    const Subspace gap = orthogonal_complement(join(a.algebra(), adjoint_subspace(a.algebra())));
    msd.residual = static_cast<double>(gap.dim());
    if (!maximal) {
      msd.witness = {{"missing_direction", element_to_json(gap.element(0))}};
    }
    report.checks.push_back(std::move(msd));

    const auto g = unique_extension_witness(a);
    std::cout << "unique-extension-witness: " << (g ? element_to_json(*g).dump() : std::string("none")) << "\n";
    Check ext;
    ext.name = "check.unique-extension";
    ext.anchor = "positive g with tau(g A0) = 0 lies in L1(D)";
    ext.trials = 1;
    ext.passed = !g.has_value();
    if (g) {
      ext.residual = a.diagonal().residual(*g);
      ext.witness = {{"g", element_to_json(*g)}};
    }
    report.checks.push_back(std::move(ext));
  } catch (const NotTracialError& err) {
    tracial.passed = false;
    tracial.residual = err.residual();
    tracial.witness = {{"a", element_to_json(err.a())}, {"b", element_to_json(err.b())}};
    report.checks.push_back(tracial);
  }
  return finish(report, c, elapsed(start));
}

InstanceSpec default_instance() {
  InstanceSpec spec;
  spec.blocks = {{2, 0.5}};
  spec.nest = NestSpec{{{1, 1}}};
  return spec;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beurling-type decompositions over finite-dimensional von Neumann algebras"};
  app.require_subcommand(1);
  Common common;
  std::string instance;
  std::string only_subspace;
  std::string only_element;
  std::string suites;
  std::string ps;
  int trials = -1;
  int max_blocks = 3;
  int max_dim = 4;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "Tolerance for rank and residual decisions (default 1e-9)")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { common.tol_set = true; });
    sub->add_option("--seed", common.seed, "Random seed (overrides the instance seed)");
    sub->add_option("--out", common.out, "Write the structured report (or instance, for gen) here");
  };

  auto* dec = app.add_subcommand("decompose", "Type decomposition of the named invariant subspaces");
  dec->add_option("instance", instance, "Instance file")->required();
  dec->add_option("--subspace", only_subspace, "Only this subspace");
  add_common(dec);

  auto* fac = app.add_subcommand("factorize", "Inner-outer factorization of the named elements");
  fac->add_option("instance", instance, "Instance file")->required();
  fac->add_option("--element", only_element, "Only this element");
  add_common(fac);

  auto* chk = app.add_subcommand("check-subdiagonal", "Tracial and maximal subdiagonal checks");
  chk->add_option("instance", instance, "Instance file")->required();
  add_common(chk);

  auto* suite = app.add_subcommand("property-suite", "Run randomized property suites");
  suite->add_option("instance", instance, "Instance file (default: upper triangular M2)");
  suite->add_option("--suite", suites, "Comma-separated suite names (default: all)");
  suite->add_option("--trials", trials, "Trials per randomized check")->check(CLI::NonNegativeNumber);
  suite->add_option("--p", ps, "Comma-separated Lp exponents (inf allowed)");
  add_common(suite);

  auto* gen = app.add_subcommand("gen", "Emit a random nest-algebra instance");
  gen->add_option("--max-blocks", max_blocks, "Maximum number of blocks")->check(CLI::Range(1, 6));
  gen->add_option("--max-dim", max_dim, "Maximum block size")->check(CLI::Range(1, 8));
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 2;
  }

  try {
    if (*dec) {
      return decompose(instance, only_subspace, common);
    }
    if (*fac) {
      return factorize(instance, only_element, common);
    }
    if (*chk) {
      return check_subdiagonal(instance, common);
    }
    if (*suite) {
      InstanceSpec spec = instance.empty() ? default_instance() : load(instance, common);
      if (common.tol_set) {
        spec.tolerance = common.tol;
      }
      SuiteOptions options;
      options.trials = trials;
      options.ps = parse_ps(ps);
      options.seed = common.seed;
      const auto names = suites.empty() ? suite_names() : split(suites);
      Report report = run_suite(spec, names, options);
      return finish(report, common, report.wall_seconds);
    }
    if (*gen) {
      const InstanceSpec spec = random_instance(common.seed.value_or(0), max_blocks, max_dim, common.tol);
      const std::string text = emit_instance(spec);
      if (common.out.empty()) {
        std::cout << text;
      } else {
        write_file(common.out, text);
      }
      return 0;
    }
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return 2;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
