#include <gtest/gtest.h>

#include "json.hpp"
#include "prodsys/checks.hpp"
#include "prodsys/config.hpp"
#include "prodsys/demos.hpp"

namespace prodsys {
namespace {

using nlohmann::json;

json minimal() {
  return json{{"schema", kConfigSchema},
              {"monoid", {{"kind", "free-product"}, {"factors", json::array({{{"dim", 2}}, {{"dim", 1}}})}}},
              {"truncation", {{"length", 2}}}};
}

TEST(Config, MinimalParses) {
  const SystemConfig cfg = parse_config(minimal());
  EXPECT_EQ(cfg.monoid().factor_count(), 2u);
  EXPECT_EQ(cfg.system.dim(cfg.monoid().parse("a")).count, 2u);
  ASSERT_TRUE(cfg.truncation);
  EXPECT_TRUE(std::holds_alternative<LengthBound>(*cfg.truncation));
}

TEST(Config, RoundTrip) {
  const SystemConfig cfg = parse_config(minimal());
  const json once = to_json(cfg);
  EXPECT_EQ(to_json(parse_config(once)), once);
}

TEST(Config, DenseFactorWithDimensionIsRejected) {
  json doc{{"monoid", {{"kind", "total-order"}, {"factors", json::array({{{"kind", "rationals-dense"}, {"dim", 3}}})}}}};
  try {
    parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    ASSERT_FALSE(e.problems().empty());
    EXPECT_NE(std::string(e.what()).find("dense"), std::string::npos) << e.what();
  }
}

TEST(Config, CollectsEveryProblem) {
  json doc{{"schema", "other"}, {"monoid", {{"kind", "lattice"}}}, {"truncation", {{"length", -1}}}};
  try {
    parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_GE(e.problems().size(), 3u);
  }
}

TEST(Config, MissingTruncation) {
  json doc = minimal();
  doc.erase("truncation");
  const SystemConfig cfg = parse_config(doc);
  EXPECT_THROW(cfg.require_truncation(), ConfigError);
  EXPECT_THROW(run_check_suite(cfg, "lemma-1.1"), ConfigError);
  // Order suites need no truncation.
  EXPECT_NO_THROW(run_check_suite(cfg, "theta"));
}

TEST(Suites, PassOnSmallSystems) {
  const SystemConfig free2 = trivial_config(Monoid::free_naturals(2), LengthBound{3}, "N*N");
  const SystemConfig nd2 = dims_config(Monoid::naturals(), {GeneratorDim::finite(2)}, LengthBound{3}, "N d=2");
  EXPECT_TRUE(run_check_suite(free2, "join-oracle").passed());
  EXPECT_TRUE(run_check_suite(nd2, "lemma-1.1").passed());
  const SuiteReport h = run_check_suite(nd2, "homomorphism-oracle", SuiteOptions{5, 20});
  EXPECT_TRUE(h.passed()) << to_text(h, false);
  for (const auto& c : h.checks) EXPECT_GT(c.cases, 0u) << c.name;
  EXPECT_THROW(run_check_suite(free2, "no-such-suite"), std::invalid_argument);
}

TEST(Suites, TextIsByteStableWithoutTiming) {
  const SystemConfig cfg = trivial_config(Monoid::free_naturals(2), LengthBound{3}, "N*N");
  const SuiteReport a = run_check_suite(cfg, "covariance", SuiteOptions{3, 8});
  const SuiteReport b = run_check_suite(cfg, "covariance", SuiteOptions{3, 8});
  EXPECT_EQ(to_text(a, false), to_text(b, false));
  EXPECT_FALSE(to_json(a, false)["checks"][0].contains("wall_ms"));
  EXPECT_TRUE(to_json(a, true)["checks"][0].contains("wall_ms"));
  EXPECT_EQ(to_json(a, false)["schema"], kReportSchema);
}

TEST(Reports, ExitCodes) {
  SuiteReport ok{"s", "sys", 1, {CheckReport{"a"}}, ""};
  SuiteReport inexact = ok;
  inexact.checks[0].status = Status::inexact;
  SuiteReport failed = ok;
  failed.checks[0].status = Status::fail;
  EXPECT_EQ(exit_code({ok}), 0);
  EXPECT_EQ(exit_code({ok, inexact}), 3);
  EXPECT_EQ(exit_code({inexact, failed}), 1);
  EXPECT_FALSE(failed.passed());
}

TEST(Demos, NarrativesAndUnknownName) {
  const SuiteReport r = run_demo("example-1.2");
  EXPECT_TRUE(r.passed()) << to_text(r, false);
  EXPECT_NE(r.narrative.find("toeplitz: non-covariant"), std::string::npos);
  EXPECT_NE(r.narrative.find("cuntz: covariant on interior"), std::string::npos);
  EXPECT_THROW(run_demo("nope"), std::invalid_argument);
}

}  // namespace
}  // namespace prodsys
