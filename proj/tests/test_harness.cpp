#include <cmath>
#include <limits>

#include "nchardy/harness/suite.hpp"
#include "support.hpp"

using namespace nchardy;
using namespace nchardy::testing;

namespace {

InstanceSpec m2_instance() {
  InstanceSpec spec;
  spec.blocks = {{2, 0.5}};
  spec.nest = NestSpec{{{1, 1}}};
  return spec;
}

TEST(Instance, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const InstanceSpec spec = random_instance(seed, 3, 4, 1e-9);
    const InstanceSpec back = parse_instance(emit_instance(spec));
    EXPECT_EQ(back, spec) << "seed " << seed;
    EXPECT_EQ(emit_instance(back), emit_instance(spec));
  }
}

TEST(Instance, RoundTripKeepsAwkwardDoubles) {
  const auto m = FinVNAlgebra::uniform({1, 2});
  InstanceSpec spec;
  spec.blocks = m.blocks();
  spec.generators = {m.element({Matrix::Constant(1, 1, Complex(0.1, -1.0 / 3.0)),
                                Matrix::Constant(2, 2, Complex(std::nextafter(1.0, 2.0), 5e-324))})};
  spec.elements["x"] = spec.generators.front();
  const InstanceSpec back = parse_instance(emit_instance(spec));
  EXPECT_EQ(back, spec);
}

TEST(Instance, DefaultsAndSubspaceClosure) {
  const InstanceSpec spec = parse_instance(R"({
    "algebra": {"blocks": [{"dim": 2}]},
    "subspaces": {"row": [[[[[1, 0], [0, 0]], [[0, 0], [0, 0]]]]]}
  })");
  EXPECT_EQ(spec.blocks.front().weight, 0.5);
  EXPECT_EQ(spec.tolerance, kDefaultTolerance);
  ASSERT_TRUE(spec.nest.has_value());
  const auto m = spec.algebra();
  // The named subspace is the invariant subspace generated by e11.
  EXPECT_TRUE(spec.subspace("row").equals(from_generators(m, {e(m, 1, 1), e(m, 1, 2)})));
  EXPECT_THROW(spec.subspace("missing"), UsageError);
}

void expect_usage_error(const std::string& text, const std::string& field) {
  try {
    parse_instance(text);
    FAIL() << "expected UsageError for " << field;
  } catch (const UsageError& err) {
    EXPECT_NE(std::string(err.what()).find(field), std::string::npos) << err.what();
  }
}

TEST(Instance, MalformedInputNamesTheField) {
  expect_usage_error(R"({"algebra": {"blocks": [{"dim": 2}]}, "tolerance": -1})", "tolerance");
  expect_usage_error(R"({"algebra": {}})", "algebra");
  expect_usage_error(R"({"algebra": {"blocks": [{"dim": 0}]}})", "algebra.blocks[0].dim");
  expect_usage_error(R"({"algebra": {"blocks": [{"dim": 2, "weight": 0.3}]}})", "algebra");
  expect_usage_error(R"({"algebra": {"blocks": [{"dim": 2}]}, "subalgebra": {"nest": [[3]]}})", "subalgebra.nest");
  expect_usage_error(R"({"algebra": {"blocks": [{"dim": 1}]}, "elements": {"f": [[[[1, 2, 3]]]]}})",
                     "elements.f[0][0][0]");
  expect_usage_error(R"({"algebra": {"blocks": [{"dim": 2}]}, "elements": {"f": [[[1, 0]]]}})", "elements.f[0]");
  expect_usage_error("{\n  \"algebra\": \n}", "line 3");
}

TEST(RunSuite, EmptyListPasses) {
  const Report r = run_suite(m2_instance(), {});
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.ok());
}

TEST(RunSuite, UnknownSuiteIsUsageError) {
  EXPECT_THROW(run_suite(m2_instance(), {"decomposition", "nonsense"}), UsageError);
}

TEST(RunSuite, UpperTriangularPurity) {
  SuiteOptions options;
  options.trials = 100;
  const Report r = run_suite(m2_instance(), {"remark2-uppertriangular"}, options);
  ASSERT_EQ(r.checks.size(), 2u);
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.name;
    EXPECT_EQ(c.trials, 100);
    EXPECT_EQ(c.residual, 0.0);
  }
}

TEST(RunSuite, NegativeControlCarriesWitness) {
  const Report r = run_suite(m2_instance(), {"negative-control"});
  EXPECT_TRUE(r.ok()) << r.to_text();
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const Check& c) { return c.name == "negative-control.wandering-gram"; });
  ASSERT_NE(it, r.checks.end());
  EXPECT_GT(it->residual, 0.1);
  ASSERT_TRUE(it->witness.contains("product"));
  // The witness product w_i* w_j lies outside span(D) = ℂ1.
  const auto m = m2();
  const auto product = element_from_json(it->witness["product"], m, "product");
  EXPECT_GT(l2_norm(m, product - trace(m, product) * m.identity()), 0.1);
}

TEST(RunSuite, SeedDeterminism) {
  SuiteOptions options;
  options.trials = 5;
  const auto names = std::vector<std::string>{"decomposition", "theta", "column-norm", "factorization"};
  const Report a = run_suite(m2_instance(), names, options);
  const Report b = run_suite(m2_instance(), names, options);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].residual, b.checks[i].residual) << a.checks[i].name;
    EXPECT_EQ(a.checks[i].trials, b.checks[i].trials);
  }
  options.seed = 99;
  const Report c = run_suite(m2_instance(), names, options);
  bool differs = false;
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    differs = differs || a.checks[i].residual != c.checks[i].residual;
  }
  EXPECT_TRUE(differs);
}

TEST(RunSuite, AllSuitesPassAtSmallScale) {
  SuiteOptions options;
  options.trials = 8;
  const Report r = run_suite(m2_instance(), suite_names(), options);
  EXPECT_TRUE(r.ok()) << r.to_text();
}

TEST(RunSuite, BadExponentIsUsageError) {
  SuiteOptions options;
  options.ps = {-1.0};
  EXPECT_THROW(run_suite(m2_instance(), {"theta"}, options), UsageError);
}

TEST(Report, JsonShape) {
  Report r;
  Check c;
  c.name = "x";
  c.anchor = "y";
  c.passed = false;
  c.residual = 1.0;
  c.witness = {{"k", 1}};
  r.checks.push_back(c);
  const auto j = r.to_json();
  EXPECT_EQ(j["summary"]["failed"], 1);
  EXPECT_EQ(j["checks"][0]["status"], "fail");
  EXPECT_EQ(j["checks"][0]["witness"]["k"], 1);
  EXPECT_NE(r.to_text().find("FAIL x"), std::string::npos);
}

} // namespace
