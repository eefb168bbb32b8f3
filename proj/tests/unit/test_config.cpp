#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "mcs/cli/config.hpp"
#include "mcs/cli/report.hpp"
#include "mcs/cli/scenario_gen.hpp"
#include "mcs/cli/svg.hpp"
#include "mcs/errors.hpp"

namespace mcs::cli {
namespace {

using nlohmann::json;

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Config, DefaultsAfterMinimalDocument) {
  const RunConfig c = build_config(json{{"scenario", {{"lambda", 50}}}});
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.scenario.num_mus, 5u);
  EXPECT_DOUBLE_EQ(c.scenario.tau, 20.0);
  EXPECT_DOUBLE_EQ(c.scenario.demand.hi, 25.0);
  EXPECT_EQ(c.train.steps_per_episode, 128u);
  EXPECT_EQ(c.env.episode_length, c.train.steps_per_episode);
  EXPECT_EQ(c.train.seed, c.seed);
  EXPECT_EQ(c.sweep.method, "static");
}

TEST(Config, SeedFlowsIntoTrainerAndEpisodeLengthFollowsD) {
  const RunConfig c =
      build_config(json{{"seed", 9}, {"scenario", {{"lambda", 5}}}, {"train", {{"steps_per_episode", 16}}}});
  EXPECT_EQ(c.train.seed, 9u);
  EXPECT_EQ(c.env.episode_length, 16u);
}

TEST(Config, MissingAndUnknownFieldsNameThePath) {
  EXPECT_NE(error_of([] { build_config(json::object()); }).find("scenario"), std::string::npos);
  EXPECT_NE(error_of([] { build_config(json{{"scenario", json::object()}}); }).find("scenario.lambda"),
            std::string::npos);
  EXPECT_NE(error_of([] { build_config(json{{"scenario", {{"lambda", 1}, {"lamda", 2}}}}); })
                .find("scenario.lamda: unknown field"),
            std::string::npos);
  EXPECT_NE(error_of([] { build_config(json{{"scenario", {{"lambda", "big"}}}}); }).find("expected a number"),
            std::string::npos);
  EXPECT_NO_THROW(build_config(json::object(), false));
}

TEST(Config, RejectsInvalidValues) {
  const json base{{"scenario", {{"lambda", 50}}}};
  json d = base;
  d["sweep"] = {{"axis", "tau"}, {"values", {1, 2}}};
  EXPECT_NE(error_of([&] { build_config(d); }).find("unknown axis"), std::string::npos);
  d = base;
  d["sweep"] = {{"axis", "delta"}, {"values", {1}}, {"method", "magic"}};
  EXPECT_THROW(build_config(d), ConfigError);
  d = base;
  d["train"] = {{"gamma", 1.5}};
  EXPECT_THROW(build_config(d), ConfigError);
  d = base;
  d["scenario"]["demand"] = {{"kind", "normal"}};
  EXPECT_THROW(build_config(d), ConfigError);
  d = base;
  d["scenario"]["cost"] = json::array({0.5, 0.2});
  EXPECT_THROW(build_config(d), ConfigError);
}

TEST(Config, SyntaxErrorsReportLineAndColumn) {
  const std::string msg = error_of([] { parse_config_text("{\n  \"seed\": 1,\n  \"x\": ]\n}", "cfg.json"); });
  EXPECT_NE(msg.find("cfg.json"), std::string::npos);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Config, OverridesParseJsonOrFallBackToString) {
  json doc{{"scenario", {{"lambda", 50}}}};
  apply_override(doc, "train.episodes=7");
  apply_override(doc, "sweep.axis=cost");
  apply_override(doc, "sweep.values=[0.1,0.2]");
  EXPECT_EQ(doc["train"]["episodes"], 7);
  EXPECT_EQ(doc["sweep"]["axis"], "cost");
  const RunConfig c = build_config(doc);
  EXPECT_EQ(c.train.episodes, 7);
  EXPECT_EQ(c.sweep.values.size(), 2u);
  EXPECT_THROW(apply_override(doc, "novalue"), ConfigError);
  EXPECT_THROW(apply_override(doc, "a..b=1"), ConfigError);
}

TEST(Config, EchoRoundTrips) {
  json doc{{"seed", 4},
           {"scenario", {{"lambda", 30}, {"mus", {{{"delta", 0.9}, {"cost", 0.1}}}}}},
           {"solver", {{"tol", 1e-9}}},
           {"sweep", {{"axis", "demand_upper"}, {"values", {20, 25}}}}};
  const RunConfig c = build_config(doc);
  const json echo = to_json(c);
  EXPECT_EQ(to_json(build_config(echo)), echo);
  EXPECT_EQ(echo["scenario"]["seed"], 4);
}

TEST(ScenarioGen, DefaultDrawsRespectRanges) {
  GenerationSpec spec;
  const Scenario s = generate_scenario(spec, 3);
  ASSERT_EQ(s.size(), 5u);
  for (const MuProfile& mu : s.mus()) {
    EXPECT_DOUBLE_EQ(mu.tau(), 20.0);
    EXPECT_GT(mu.delta(), mu.cost());
    EXPECT_GE(mu.cost(), 0.0);
    EXPECT_LE(mu.delta(), 1.0);
    EXPECT_DOUBLE_EQ(mu.demand().hi(), 25.0);
  }
  const Scenario again = generate_scenario(spec, 3);
  for (std::size_t n = 0; n < s.size(); ++n) EXPECT_EQ(s.mu(n).delta(), again.mu(n).delta());
  const Scenario other = generate_scenario(spec, 4);
  EXPECT_NE(s.mu(0).delta(), other.mu(0).delta());
}

TEST(ScenarioGen, Presets) {
  const Scenario d = generate_scenario(delta_trend_preset(), 1);
  for (const MuProfile& mu : d.mus()) {
    EXPECT_EQ(mu.cost(), 0.0);
    EXPECT_GT(mu.delta(), 0.0);
    EXPECT_LE(mu.delta(), 1.0);
  }
  const Scenario c = generate_scenario(cost_trend_preset(), 1);
  for (const MuProfile& mu : c.mus()) {
    EXPECT_EQ(mu.delta(), 1.0);
    EXPECT_LT(mu.cost(), 1.0);
  }
}

TEST(ScenarioGen, EmptyFeasibleRegionIsConfigError) {
  GenerationSpec spec;
  spec.cost = {0.6, 0.9};
  spec.delta = {0.1, 0.5};
  EXPECT_THROW(generate_scenario(spec, 1), ConfigError);
}

TEST(Report, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, SinkStaysInsideItsDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "mcs_sink_test";
  std::filesystem::remove_all(dir);
  OutputSink sink(dir);
  sink.write("a.csv", "x\n1\n");
  EXPECT_THROW(sink.write("../escape.csv", "no"), std::invalid_argument);
  EXPECT_THROW(sink.write("/tmp/abs.csv", "no"), std::invalid_argument);
  EXPECT_THROW(sink.write("sub/b.csv", "no"), std::invalid_argument);
  sink.write_manifest("test", 1, json{{"k", 1}}, utc_timestamp());

  std::set<std::string> present;
  for (const auto& e : std::filesystem::directory_iterator(dir)) present.insert(e.path().filename().string());
  EXPECT_EQ(present, (std::set<std::string>{"a.csv", "manifest.json"}));

  std::ifstream in(dir / "manifest.json");
  const json m = json::parse(in);
  EXPECT_EQ(m["files"][0]["name"], "a.csv");
  EXPECT_EQ(m["files"][0]["sha256"], sha256_hex("x\n1\n"));
  EXPECT_EQ(m["seed"], 1);
  EXPECT_EQ(m["config"]["k"], 1);
  std::filesystem::remove_all(dir);
}

TEST(Svg, DeterministicAndWellFormed) {
  const std::string a = line_chart({"t", "x", "y"}, {{"s", {0, 1, 2}, {1, 3, 2}, false}, {"r", {0, 2}, {2, 2}, true}});
  const std::string b = line_chart({"t", "x", "y"}, {{"s", {0, 1, 2}, {1, 3, 2}, false}, {"r", {0, 2}, {2, 2}, true}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<svg", 0), 0u);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  const std::string bars = bar_chart({"t", "x", "y"}, {"a", "b"}, {{"s", {}, {1, 2}, false}});
  EXPECT_NE(bars.find("<rect"), std::string::npos);
}

}  // namespace
}  // namespace mcs::cli
