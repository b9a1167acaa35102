#include "nchardy/harness/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "nchardy/factorization.hpp"
#include "nchardy/random.hpp"

namespace nchardy {

using nlohmann::json;

namespace {

constexpr int kMaxBlocks = 3;
constexpr int kMaxDim = 5;
constexpr double kColumnSumThreshold = 1e-10;

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t salt, int trial) {
  return mix(mix(base ^ (salt << 32)) + static_cast<std::uint64_t>(trial));
}

// FNV-1a, so that trial seeds do not depend on the standard library.
std::uint64_t salt_of(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : name) {
    h = (h ^ c) * 0x100000001b3ULL;
  }
  return h & 0xffffffffULL;
}

// Worst-case accumulator for one Check. Exceptions raised inside a trial are
// recorded as failures with the error text in the witness.
class Tally {
public:
  Tally(std::string name, std::string anchor, double threshold, bool expect_above = false) {
    check_.name = std::move(name);
    check_.anchor = std::move(anchor);
    check_.threshold = threshold;
    check_.expect_above = expect_above;
    check_.residual = expect_above ? std::numeric_limits<double>::infinity() : 0.0;
  }

  void observe(double residual, const std::function<json()>& witness) {
    ++check_.trials;
    const bool ok = check_.expect_above ? residual > check_.threshold : residual <= check_.threshold;
    check_.residual = check_.expect_above ? std::min(check_.residual, residual) : std::max(check_.residual, residual);
    if (!ok && check_.passed) {
      check_.passed = false;
      check_.witness = witness();
    }
  }

  void fail(const std::string& error, json witness) {
    ++check_.trials;
    check_.residual = check_.expect_above ? 0.0 : std::numeric_limits<double>::infinity();
    if (check_.passed) {
      check_.passed = false;
      witness["error"] = error;
      check_.witness = std::move(witness);
    }
  }

  void set_witness(json witness) { check_.witness = std::move(witness); }

  Check done() const {
    Check c = check_;
    if (c.trials == 0) {
      c.residual = 0.0;
    }
    return c;
  }

private:
  Check check_;
};

// Random (nest algebra, invariant subspace) pair for one trial.
struct Trial {
  std::uint64_t seed;
  FinVNAlgebra m;
  TracialSubalgebra a;
  Subspace k;
};

Trial random_trial(std::uint64_t seed, double tol, int variant) {
  Rng rng(seed);
  FinVNAlgebra m = random_algebra(rng, kMaxBlocks, kMaxDim, tol);
  TracialSubalgebra a = build_nest_subalgebra(m, random_nest(m, rng));
  RandomSubspaceOptions opts;
  // Variant 0 draws k uniformly from 1..dim M as documented for the
  // generator; the others keep k small so that proper subspaces dominate.
  if (variant % 4 != 0) {
    opts.generators = 1 + static_cast<int>(rng() % 3);
    opts.low_rank = variant % 2 == 1;
  }
  Subspace k = random_invariant_subspace(a, mix(seed), opts);
  return {seed, std::move(m), std::move(a), std::move(k)};
}

json trial_witness(const Trial& t) {
  json blocks = json::array();
  for (const auto& b : t.m.blocks()) {
    blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
  }
  return {{"trial_seed", t.seed}, {"blocks", blocks}, {"dim_k", t.k.dim()}};
}

template <class F>
void guarded(Tally& tally, const json& context, F&& body) {
  try {
    body();
  } catch (const Error& err) {
    tally.fail(err.what(), context);
  }
}

int trials_or(const SuiteOptions& o, int fallback) { return o.trials >= 0 ? o.trials : fallback; }

std::vector<double> ps_or(const SuiteOptions& o, std::vector<double> fallback) {
  return o.ps.empty() ? fallback : o.ps;
}

struct Context {
  const InstanceSpec& spec;
  const SuiteOptions& options;
  std::uint64_t seed;
  double tol;
};

// ---------------------------------------------------------------------------

Report decomposition_suite(const Context& ctx) {
  const double thr = 10 * ctx.tol;
  Tally inv("decomposition.invariants", "column-sum decomposition of an invariant subspace", thr);
  Tally dims("decomposition.dimensions", "dim Z + sum of dim(u_i A) = dim K", 0.0);
  Tally gram("decomposition.wandering-gram", "W*W lies in L1(D) for maximal subdiagonal A", thr);
  const int n = trials_or(ctx.options, 200);
  for (int i = 0; i < n; ++i) {
    const Trial t = random_trial(trial_seed(ctx.seed, salt_of("decomposition"), i), ctx.tol, i);
    guarded(inv, trial_witness(t), [&] {
      const auto dec = type_decomposition(t.k, t.a);
      const auto r = decomposition_residuals(dec, t.a);
      const auto w = [&] {
        json j = trial_witness(t);
        j["residuals"] = {{"partial_isometry", r.partial_isometry}, {"initial_in_d", r.initial_in_d},
                          {"cross_products", r.cross_products},     {"isometries_kill_z", r.isometries_kill_z},
                          {"z_type2", r.z_type2},                   {"z_invariant", r.z_invariant},
                          {"column_sum", r.column_sum},             {"z_kills_w", r.z_kills_w},
                          {"k1_wandering", r.k1_wandering},         {"k1_from_isometries", r.k1_from_isometries},
                          {"reconstruction", r.reconstruction}};
        return j;
      };
      inv.observe(r.max(), w);
      dims.observe(static_cast<double>(std::abs(r.dim_z + r.sum_dim_isometry_spans - r.dim_k)), w);
      gram.observe(r.wandering_gram, w);
    });
  }
  Report report;
  report.checks = {inv.done(), dims.done(), gram.done()};

  // Named subspaces of the instance itself.
  if (!ctx.spec.subspaces.empty()) {
    const TracialSubalgebra a = ctx.spec.subalgebra();
    for (const auto& [name, gens] : ctx.spec.subspaces) {
      Tally tally("decomposition.instance." + name, "column-sum decomposition of an invariant subspace", thr);
      guarded(tally, json{{"subspace", name}}, [&] {
        const auto dec = type_decomposition(ctx.spec.subspace(name), a);
        const auto r = decomposition_residuals(dec, a);
        tally.observe(std::max(r.max(), r.dimensions_add_up() ? 0.0 : 1.0), [&] {
          return json{{"subspace", name}, {"type", to_string(classify(dec))}};
        });
      });
      report.checks.push_back(tally.done());
    }
  }
  return report;
}

Report uniqueness_suite(const Context& ctx) {
  Tally tally("uniqueness.z-and-k1", "Z and K1 are uniquely determined by K", 10 * ctx.tol);
  const int n = trials_or(ctx.options, 100);
  for (int i = 0; i < n; ++i) {
    const Trial t = random_trial(trial_seed(ctx.seed, salt_of("uniqueness"), i), ctx.tol, i);
    guarded(tally, trial_witness(t), [&] {
      const auto base = type_decomposition(t.k, t.a);
      for (std::uint64_t r = 1; r <= 3; ++r) {
        const auto other = type_decomposition(t.k, t.a, {.seed = mix(t.seed + r), .rotate_basis = true});
        const double dz = subspace_distance(base.z, other.z);
        const double dk = subspace_distance(base.k1, other.k1);
        tally.observe(std::max(dz, dk), [&] {
          json j = trial_witness(t);
          j["rerun"] = r;
          j["z_distance"] = dz;
          j["k1_distance"] = dk;
          return j;
        });
      }
    });
  }
  return {{tally.done()}};
}

Report column_norm_suite(const Context& ctx) {
  const auto ps = ps_or(ctx.options, {1.0, 1.5, 2.0, 3.0, 4.0});
  Report report;
  std::vector<Tally> tallies;
  for (double p : ps) {
    tallies.emplace_back("column-norm.p=" + json(p).dump(), "column Lp-sum norm identity", kColumnSumThreshold);
  }
  const int n = trials_or(ctx.options, 100);
  int multi = 0;
  for (int i = 0; i < n; ++i) {
    // Low-rank generators give wandering subspaces with several isometries.
    const Trial t = random_trial(trial_seed(ctx.seed, salt_of("column-norm"), i), ctx.tol, 1);
    Rng rng(mix(t.seed));
    const json context = trial_witness(t);
    std::vector<AlgebraElement> xs;
    try {
      const auto dec = type_decomposition(t.k, t.a);
      for (const auto& u : dec.isometries) {
        xs.push_back(u * random_in(t.a.algebra(), rng));
      }
      if (!dec.z.is_zero()) {
        xs.push_back(random_in(dec.z, rng));
      }
    } catch (const Error& err) {
      for (auto& tally : tallies) {
        tally.fail(err.what(), context);
      }
      continue;
    }
    multi += xs.size() > 1 ? 1 : 0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      guarded(tallies[j], context, [&] {
        const auto norms = column_sum_norms(t.m, xs, LpIndex(ps[j]));
        tallies[j].observe(norms.relative(), [&] {
          json w = context;
          w["lhs"] = norms.lhs;
          w["rhs"] = norms.rhs;
          w["family_size"] = xs.size();
          return w;
        });
      });
    }
  }
  for (auto& tally : tallies) {
    Check c = tally.done();
    if (c.passed) {
      c.witness = {{"families_with_several_members", multi}};
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

Report theta_suite(const Context& ctx) {
  const double inf = std::numeric_limits<double>::infinity();
  const auto ps = ps_or(ctx.options, {1.0, 2.0, 3.0, inf});
  std::vector<Tally> contraction;
  for (double p : ps) {
    contraction.emplace_back("theta.contraction.p=" + (std::isinf(p) ? std::string("inf") : json(p).dump()),
                             "theta is an Lp contraction onto the wandering subspace", ctx.tol);
  }
  Tally kernel("theta.kernel", "kernel of theta is [K A0]", 10 * ctx.tol);
  Tally idem("theta.idempotent", "theta is idempotent with range W", 10 * ctx.tol);
  const int n = trials_or(ctx.options, 100);
  for (int i = 0; i < n; ++i) {
    const Trial t = random_trial(trial_seed(ctx.seed, salt_of("theta"), i), ctx.tol, i);
    if (t.k.is_zero()) {
      continue;
    }
    Rng rng(mix(t.seed));
    const json context = trial_witness(t);
    guarded(idem, context, [&] {
      const auto dec = type_decomposition(t.k, t.a);
      const auto w = random_in(t.k, rng);
      const auto th = theta_projection(dec, t.a, w);
      idem.observe(std::max(l2_norm(t.m, theta_projection(dec, t.a, th) - th), dec.wandering.w.residual(th)),
                   [&] { return context; });
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const LpIndex p(ps[j]);
        const double excess = std::max(0.0, lp_norm(t.m, th, p) - lp_norm(t.m, w, p));
        contraction[j].observe(excess, [&] { return context; });
      }
      if (!dec.wandering.ka0.is_zero()) {
        const auto w0 = random_in(dec.wandering.ka0, rng);
        kernel.observe(l2_norm(t.m, theta_projection(dec, t.a, w0)), [&] { return context; });
      }
    });
  }
  Report report;
  for (auto& c : contraction) {
    report.checks.push_back(c.done());
  }
  report.checks.push_back(kernel.done());
  report.checks.push_back(idem.done());
  return report;
}

Report factorization_suite(const Context& ctx) {
  const double thr = 10 * ctx.tol;
  Tally pd("factorization.positive-definite", "invertible positive f factors as f = uh, u unitary, h outer", thr);
  Tally unitary("factorization.unitary", "inner factor u satisfies u*u = uu* = 1", ctx.tol);
  Tally outer("factorization.outer", "[hA] = [A] for the outer factor", 0.0);
  Tally wandering("factorization.wandering-vector", "wandering vectors are partially BN-factorizable", thr);
  Tally hull("factorization.wandering-hull-type1", "the hull [fA] of a wandering vector is type 1", 0.0);
  const int n = trials_or(ctx.options, 200);
  for (int i = 0; i < n; ++i) {
    const Trial t = random_trial(trial_seed(ctx.seed, salt_of("factorization"), i), ctx.tol, i);
    Rng rng(mix(t.seed));
    json context = trial_witness(t);
    const auto f = random_positive_definite(t.m, rng);
    guarded(pd, context, [&] {
      const auto fac = bn_factorize(f, t.a);
      if (!fac) {
        pd.fail("no unitary inner factor", context);
        return;
      }
      const auto r = factorization_residuals(*fac, t.a);
      const auto w = [&] { return context; };
      pd.observe(r.max(), w);
      unitary.observe(r.unitary, w);
      outer.observe(is_outer(fac->pairs.front().outer, t.a) ? 0.0 : 1.0, w);
    });

    guarded(wandering, context, [&] {
      const auto w = wandering_subspace(t.k, t.a).w;
      if (w.is_zero()) {
        return;
      }
      const auto g = random_in(w, rng);
      hull.observe(classify_type(invariant_hull(g, t.a), t.a) == TypeLabel::Type1 ? 0.0 : 1.0,
                   [&] { return context; });
      const auto fac = partial_bn_factorize(g, t.a);
      if (!fac) {
        wandering.fail("no factorization", context);
        return;
      }
      wandering.observe(factorization_residuals(*fac, t.a).max(), [&] {
        json j = context;
        j["kind"] = to_string(fac->kind);
        return j;
      });
    });
  }
  return {{pd.done(), unitary.done(), outer.done(), wandering.done(), hull.done()}};
}

Report standard_case_suite(const Context& ctx) {
  const double thr = 10 * ctx.tol;
  Tally unit("standard-case.unitary-generator", "K = uH for a unitary u iff W has a cyclic separating vector", thr);
  const int n = trials_or(ctx.options, 50);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t seed = trial_seed(ctx.seed, salt_of("standard-case"), i);
    Rng rng(seed);
    const FinVNAlgebra m = random_algebra(rng, kMaxBlocks, kMaxDim, ctx.tol);
    const TracialSubalgebra a = build_nest_subalgebra(m, random_nest(m, rng));
    const auto w = random_unitary(m, rng);
    const Subspace k = right_module_span(from_generators(m, {w}), a.a_basis());
    const json context{{"trial_seed", seed}};
    guarded(unit, context, [&] {
      const auto u = standard_generator(type_decomposition(k, a), a);
      if (!u) {
        unit.fail("no unitary generator", context);
        return;
      }
      const double d = subspace_distance(right_module_span(from_generators(m, {*u}), a.a_basis()), k);
      const double uu = std::max((u->adjoint() * *u - m.identity()).max_abs(), (*u * u->adjoint() - m.identity()).max_abs());
      unit.observe(std::max(d, uu), [&] { return context; });
    });
  }
  Tally none("standard-case.row-subspace", "span{e11, e12} over upper triangular M2 has no unitary generator", 0.0);
  const FinVNAlgebra m2 = FinVNAlgebra::uniform({2}, ctx.tol);
  const auto a2 = build_nest_subalgebra(m2, NestSpec::upper_triangular(m2));
  guarded(none, json::object(), [&] {
    const auto k = from_generators(m2, {m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 0, 1)});
    const auto u = standard_generator(type_decomposition(k, a2), a2);
    none.observe(u ? 1.0 : 0.0, [&] { return json{{"generator", element_to_json(*u)}}; });
  });
  return {{unit.done(), none.done()}};
}

Report istr_suite(const Context& ctx) {
  const auto ps = ps_or(ctx.options, {0.5, 1.0, 2.0, 3.0});
  Tally found("istr.witness", "tau((d*vd)^p) = tau((d*ed)^p) for all d forces v = e", 0.0);
  Tally equal("istr.equality", "no witness when v = e", 0.0);
  const int n = trials_or(ctx.options, 100);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t seed = trial_seed(ctx.seed, salt_of("istr"), i);
    Rng rng(seed);
    const FinVNAlgebra m = random_algebra(rng, kMaxBlocks, kMaxDim, ctx.tol);
    const auto x = random_low_rank(m, rng, 1 + static_cast<int>(rng() % 3));
    const auto e = support_projection(m, x * x.adjoint());
    const auto g = random_gaussian(m, rng);
    // Alternate small positive perturbations of e with unrelated positives.
    const auto v = i % 2 == 0 ? e + 0.01 * (g.adjoint() * g) : 3.0 * (g.adjoint() * g);
    const double p = ps[static_cast<std::size_t>(i) % ps.size()];
    const json context{{"trial_seed", seed}, {"p", p}, {"gap", (v - e).max_abs()}};
    if ((v - e).max_abs() <= 1e-3) {
      continue;
    }
    guarded(found, context, [&] {
      const auto d = istr_witness(m, v, e, p, 50, seed);
      found.observe(d ? 0.0 : 1.0, [&] { return context; });
    });
    guarded(equal, context, [&] {
      const auto d = istr_witness(m, e, e, p, 50, seed);
      equal.observe(d ? 1.0 : 0.0, [&] { return context; });
    });
  }
  return {{found.done(), equal.done()}};
}

Report negative_control_suite(const Context& ctx) {
  const FinVNAlgebra m = FinVNAlgebra::uniform({2}, ctx.tol);
  const auto e = [&](int i, int j) { return m.matrix_unit(0, i - 1, j - 1); };
  const TracialSubalgebra a = build_from_basis(m, {e(1, 2)});
  const Subspace x = from_generators(m, {e(1, 1), e(1, 2), e(2, 2)});
  const double thr = 10 * ctx.tol;
  Report report;

  Tally not_max("negative-control.not-maximal", "span{1, e12} + its adjoint is not dense in M2", 0.0, true);
  const double deficit = static_cast<double>(m.dim() - join(a.algebra(), adjoint_subspace(a.algebra())).dim());
  not_max.observe(deficit, [] { return json(); });
  report.checks.push_back(not_max.done());

  Tally gram("negative-control.wandering-gram", "W*W lies in L1(D) fails without maximal subdiagonality", thr, true);
  guarded(gram, json::object(), [&] {
    if (!is_invariant(x, a)) {
      gram.fail("control subspace is not invariant", json::object());
      return;
    }
    const auto w = wandering_subspace(x, a).w;
    const auto g = wandering_gram_residual(w, a);
    gram.observe(g.residual, [] { return json(); });
    if (g.i >= 0) {
      const auto wi = w.element(g.i);
      const auto wj = w.element(g.j);
      json witness{{"subspace", json::array({element_to_json(e(1, 1)), element_to_json(e(1, 2)), element_to_json(e(2, 2))})},
                   {"w_i", element_to_json(wi)},
                   {"w_j", element_to_json(wj)},
                   {"product", element_to_json(wi.adjoint() * wj)},
                   {"distance_from_d", g.residual}};
      gram.set_witness(std::move(witness));
    }
  });
  report.checks.push_back(gram.done());

  Tally ext("negative-control.unique-extension", "positive g annihilating A0 outside L1(D)", thr, true);
  guarded(ext, json::object(), [&] {
    const auto g = unique_extension_witness(a);
    ext.observe(g ? a.diagonal().residual(*g) : 0.0, [] { return json(); });
    if (g) {
      ext.set_witness({{"g", element_to_json(*g)}});
    }
  });
  report.checks.push_back(ext.done());

  Tally refused("negative-control.refused", "decomposition requires a maximal subdiagonal algebra", 0.0);
  try {
    (void)type_decomposition(x, a);
    refused.observe(1.0, [] { return json{{"error", "decomposition accepted a non-subdiagonal algebra"}}; });
  } catch (const PreconditionError&) {
    refused.observe(0.0, [] { return json(); });
  }
  report.checks.push_back(refused.done());
  return report;
}

Report remark2_suite(const Context& ctx) {
  Report report;
  const int n = trials_or(ctx.options, 100);
  for (int size : {4, 5}) {
    const std::string name = "remark2-uppertriangular.M" + std::to_string(size);
    Tally tally(name, "invariant subspaces of upper triangular matrices have Z = 0", 0.0);
    const FinVNAlgebra m = FinVNAlgebra::uniform({size}, ctx.tol);
    const TracialSubalgebra a = build_nest_subalgebra(m, NestSpec::upper_triangular(m));
    for (int i = 0; i < n; ++i) {
      const std::uint64_t seed = trial_seed(ctx.seed, salt_of(name), i);
      Rng rng(seed);
      RandomSubspaceOptions opts;
      if (i % 4 != 0) {
        opts.generators = 1 + static_cast<int>(rng() % 3);
        opts.low_rank = i % 2 == 1;
      }
      const Subspace k = random_invariant_subspace(a, seed, opts);
      const json context{{"trial_seed", seed}, {"dim_k", k.dim()}};
      guarded(tally, context, [&] {
        const auto dec = type_decomposition(k, a);
        tally.observe(static_cast<double>(dec.z.dim()), [&] { return context; });
      });
    }
    report.checks.push_back(tally.done());
  }
  return report;
}

Report remark4_suite(const Context& ctx) {
  Tally agree("remark4-orthogonality.agreement", "f*g = 0 iff [fA] is orthogonal to [gA]", 0.0);
  Tally oracle("remark4-orthogonality.oracle", "hull orthogonality matches brute-force inner products", 0.0);
  Tally constructed("remark4-orthogonality.zero-products", "constructed pairs with f*g = 0", 0.0);
  const int n = trials_or(ctx.options, 200);
  const int zero_pairs = n / 4;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t seed = trial_seed(ctx.seed, salt_of("remark4"), i);
    Rng rng(seed);
    const FinVNAlgebra m = random_algebra(rng, kMaxBlocks, kMaxDim, ctx.tol);
    const TracialSubalgebra a = build_nest_subalgebra(m, random_nest(m, rng));
    AlgebraElement f = random_gaussian(m, rng);
    AlgebraElement g = random_low_rank(m, rng, 1 + static_cast<int>(rng() % 3));
    const bool make_zero = i < zero_pairs;
    if (make_zero) {
      const auto [p, q] = random_complementary_projections(m, rng);
      f = p * f;
      g = q * g;
    }
    const json context{{"trial_seed", seed}, {"constructed_zero_product", make_zero}};
    guarded(agree, context, [&] {
      const double scale = std::max(1.0, f.max_abs() * g.max_abs());
      const bool zero = (f.adjoint() * g).max_abs() <= ctx.tol * scale;
      const Subspace fa = invariant_hull(f, a);
      const Subspace ga = invariant_hull(g, a);
      const double overlap = fa.is_zero() || ga.is_zero() ? 0.0 : (fa.coords().adjoint() * ga.coords()).norm();
      const bool orthogonal = overlap <= 10 * ctx.tol;
      agree.observe(zero == orthogonal ? 0.0 : 1.0, [&] {
        json j = context;
        j["zero_product"] = zero;
        j["overlap"] = overlap;
        return j;
      });
      // Oracle: every τ((g b)*(f a)) over basis elements vanishes.
      bool brute = true;
      for (const auto& x : a.a_basis()) {
        for (const auto& y : a.a_basis()) {
          const auto fx = f * x;
          const auto gy = g * y;
          if (std::abs(inner(m, fx, gy)) > 10 * ctx.tol * std::max(1.0, l2_norm(m, fx) * l2_norm(m, gy))) {
            brute = false;
          }
        }
      }
      oracle.observe(brute == orthogonal ? 0.0 : 1.0, [&] { return context; });
      if (make_zero) {
        constructed.observe(zero ? 0.0 : 1.0, [&] { return context; });
      }
    });
  }
  return {{agree.done(), oracle.done(), constructed.done()}};
}

using SuiteFn = Report (*)(const Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"decomposition", decomposition_suite},
      {"uniqueness", uniqueness_suite},
      {"column-norm", column_norm_suite},
      {"theta", theta_suite},
      {"factorization", factorization_suite},
      {"standard-case", standard_case_suite},
      {"istr", istr_suite},
      {"negative-control", negative_control_suite},
      {"remark2-uppertriangular", remark2_suite},
      {"remark4-orthogonality", remark4_suite},
  };
  return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

Report run_suite(const InstanceSpec& spec, const std::vector<std::string>& suites, const SuiteOptions& options) {
  std::vector<SuiteFn> fns;
  for (const auto& name : suites) {
    const auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; });
    if (it == registry().end()) {
      throw UsageError("--suite: unknown suite '" + name + "'");
    }
    fns.push_back(it->second);
  }
  for (double p : options.ps) {
    if (!(p > 0.0)) {
      throw UsageError("--p: exponents must be positive");
    }
  }
  const Context ctx{spec, options, options.seed.value_or(spec.seed), spec.tolerance};
  Report report;
  const auto start = std::chrono::steady_clock::now();
  for (const auto fn : fns) {
    report.append(fn(ctx));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

} // namespace nchardy
