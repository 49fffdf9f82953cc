#include <gtest/gtest.h>

#include "ordgsd/config.hpp"
#include "ordgsd/errors.hpp"

using namespace ordgsd;

namespace {

const char* kBase = R"(# reference setting
control = 0.58, 0.05, 0.17, 0.03, 0.04, 0.13
n_stage = 100
scenario = 1
scenario = Crossing: 1.5, 1.5, 1.1, 1.1, 1.1
ntrial = 250   # trailing comment
)";

RunConfig build(Command c, const std::string& text, const Overrides& ov = {}) {
  return build_run_config(c, parse_key_values(text), ov);
}

std::string key_of_error(Command c, const std::string& text) {
  try {
    build(c, text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(ParseKeyValues, SkipsCommentsAndBlankLines) {
  const auto kv = parse_key_values("a = 1\n\n# c\n  b=two words  # x\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[1].key, "b");
  EXPECT_EQ(kv[1].value, "two words");
  EXPECT_EQ(kv[1].line, 4);
  EXPECT_THROW(parse_key_values("novalue\n"), ConfigError);
}

TEST(Commands, NamesRoundTrip) {
  for (auto c : {Command::SsPo, Command::SsNpo, Command::SsSwitch, Command::OcPo, Command::OcNpo,
                 Command::OcSwitch, Command::PowerCurve}) {
    EXPECT_EQ(parse_command(to_string(c)), c);
  }
  EXPECT_FALSE(parse_command("oc-foo"));
}

TEST(BuildRunConfig, DefaultsPerDesign) {
  const auto po = build(Command::OcPo, kBase);
  EXPECT_EQ(po.design.design, Design::PO);
  EXPECT_EQ(po.design.c_s, 0.95);
  EXPECT_EQ(po.n_trials, 250u);
  ASSERT_EQ(po.scenarios.size(), 2u);
  EXPECT_EQ(po.scenarios[0].label, "Scenario 1");
  EXPECT_EQ(po.scenarios[1].label, "Crossing");
  EXPECT_TRUE(po.scenarios[0].effect.is_proportional());
  EXPECT_EQ(po.scenarios[0].effect.boundaries(), 5u);
  EXPECT_EQ(build(Command::OcNpo, kBase).design.c_s, 0.86);
  EXPECT_EQ(build(Command::OcSwitch, kBase).design.c_s, 0.97);
  EXPECT_EQ(po.n_grid.front(), 50);
  EXPECT_EQ(po.n_grid.back(), 190);
  EXPECT_EQ(build(Command::OcNpo, kBase).n_grid.back(), 400);
}

TEST(BuildRunConfig, SizingDefaultsToFrequentistWithConfirmation) {
  const auto cfg = build(Command::SsPo, std::string(kBase) + "or_alt = 1.5\n");
  EXPECT_EQ(cfg.design.method, Method::Frequentist);
  EXPECT_TRUE(cfg.confirm_bayesian);
  const auto bayes = build(Command::SsPo, std::string(kBase) + "or_alt = 1.5\nmethod = bayesian\n");
  EXPECT_EQ(bayes.design.method, Method::Bayesian);
}

TEST(BuildRunConfig, UtilityDefaultsToLinearOffTheReferenceSize) {
  const auto cfg = build(Command::OcPo, "control = 0.3, 0.2, 0.15, 0.05, 0.3\nscenario = 1.5\n");
  const auto pts = cfg.design.utility.points();
  EXPECT_EQ(std::vector<double>(pts.begin(), pts.end()),
            (std::vector<double>{100, 75, 50, 25, 0}));
}

TEST(BuildRunConfig, CatalogExpandsToScenarios) {
  const auto cfg = build(Command::OcNpo, "control = 0.58, 0.05, 0.17, 0.03, 0.04, 0.13\ncatalog = 1, 6, 8\n");
  ASSERT_EQ(cfg.scenarios.size(), 3u);
  EXPECT_EQ(cfg.scenarios[2].label, "Scenario 8");
  EXPECT_EQ(cfg.scenarios[2].effect.odds_ratios()[4], 1.3);
}

TEST(BuildRunConfig, ErrorsNameTheKey) {
  EXPECT_EQ(key_of_error(Command::OcPo, "scenario = 1\n"), "control");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "colour = red\n"), "colour");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "n_stage = 0\n"), "n_stage");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "n_stage = 20\n"), "n_stage");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "alpha = 1.5\n"), "alpha");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "futility = 0.99\n"), "futility");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "method = magic\n"), "method");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "n_grid = 50:10:5\n"), "n_grid");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "utility = 1, 2, 3, 4, 5, 6\n"),
            "utility");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "design = npo\n"), "design");
  EXPECT_EQ(key_of_error(Command::OcPo, "control = 0.5, 0.5, 0.5\nscenario = 1\n"), "control");
  EXPECT_EQ(key_of_error(Command::OcPo, "control = 0.3, 0.01, 0.69\nscenario = 5, 0.2\n"),
            "scenario");
  EXPECT_EQ(key_of_error(Command::OcPo, "control = 0.2, 0.3, 0.5\n"), "scenario");
  EXPECT_EQ(key_of_error(Command::SsPo, kBase), "or_alt");
  EXPECT_EQ(key_of_error(Command::OcPo, std::string(kBase) + "seed = x\n"), "seed");
}

TEST(BuildRunConfig, OverridesWin) {
  Overrides ov;
  ov.seed = 7;
  ov.ntrial = 3;
  ov.method = Method::Frequentist;
  ov.out = "elsewhere";
  ov.threads = 2;
  const auto cfg = build(Command::OcPo, kBase, ov);
  EXPECT_EQ(cfg.design.seed, 7u);
  EXPECT_EQ(cfg.n_trials, 3u);
  EXPECT_EQ(cfg.design.method, Method::Frequentist);
  EXPECT_EQ(cfg.out_dir, "elsewhere");
  EXPECT_EQ(cfg.design.threads, 2u);
}

TEST(BuildRunConfig, RangesExpand) {
  const auto cfg = build(Command::SsPo, std::string(kBase) +
                                            "or_alt = 1.5\nn_grid = 20:100:20\n"
                                            "superiority_grid = 0.9:0.95:0.01\n");
  EXPECT_EQ(cfg.n_grid, (std::vector<std::int64_t>{20, 40, 60, 80, 100}));
  ASSERT_EQ(cfg.grid.superiority.size(), 6u);
  EXPECT_EQ(cfg.grid.superiority[3], 0.93);
}

TEST(CanonicalText, RoundTripsEveryCommand) {
  const std::string text = std::string(kBase) +
                           "or_alt = 1.5, 1.5, 1.2, 1.2, 1.2\nmcmc_burn = 700\nfix_mu = true\n"
                           "delta_prior_var = 4\nmodel_prior_npo = 0.3\nseed = 12\n";
  for (auto c : {Command::SsPo, Command::SsSwitch, Command::OcNpo, Command::PowerCurve}) {
    const auto cfg = build(c, text);
    const auto canon = canonical_config_text(cfg);
    const auto again = build(c, canon);
    EXPECT_EQ(canonical_config_text(again), canon);
    EXPECT_EQ(to_json(again), to_json(cfg));
    EXPECT_EQ(again.design.mcmc.n_burn, 700u);
    EXPECT_TRUE(again.design.mcmc.fix_mu);
    EXPECT_EQ(again.design.priors.delta_vars[2], 4.0);
  }
}

TEST(CanonicalText, JsonCarriesEverySetting) {
  const auto cfg = build(Command::OcSwitch, std::string(kBase) + "n_stage_npo = 130, 160\n");
  const auto j = to_json(cfg);
  for (const char* key : {"design", "control", "utility", "n_stage", "switch_sizes", "futility",
                          "superiority", "method", "seed", "ntrial", "mcmc", "priors", "rjmcmc",
                          "scenarios", "canonical"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["switch_sizes"]["npo_stage2"], 160);
}
