#include <atomic>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ordgsd/errors.hpp"
#include "ordgsd/trial.hpp"

using namespace ordgsd;

namespace {

DesignConfig quick(Design design, Method method = Method::Frequentist) {
  DesignConfig cfg;
  cfg.design = design;
  cfg.method = method;
  cfg.n_stage = 60;
  cfg.switch_sizes = SwitchSizes{60, 50, 60, 70};
  cfg.mcmc.n_burn = 300;
  cfg.mcmc.n_keep = 400;
  cfg.rjmcmc.n_sweeps = 400;
  cfg.seed = 99;
  return cfg;
}

const Scenario& scenario(int id) {
  static const auto cat = scenario_catalog();
  return cat[static_cast<std::size_t>(id - 1)];
}

void expect_same(const OperatingCharacteristics& a, const OperatingCharacteristics& b) {
  EXPECT_EQ(a.pet, b.pet);
  EXPECT_EQ(a.prn, b.prn);
  EXPECT_EQ(a.avg_n_per_arm, b.avg_n_per_arm);
  ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    EXPECT_EQ(a.outcomes[i].interim_stat, b.outcomes[i].interim_stat);
    EXPECT_EQ(a.outcomes[i].final_stat, b.outcomes[i].final_stat);
    EXPECT_EQ(a.outcomes[i].decision, b.outcomes[i].decision);
  }
}

}  // namespace

TEST(Decide, AppliesCutoffs) {
  TrialStatistics s;
  s.interim = 0.1;
  s.final_stat = 0.99;
  s.stage1_per_arm = 50;
  s.stage2_per_arm = 70;
  auto o = decide(s, 0.2, 0.95);
  EXPECT_EQ(o.decision, Decision::StoppedFutile);
  EXPECT_EQ(o.n_enrolled_per_arm, 50);
  EXPECT_FALSE(o.final_stat);
  s.interim = 0.2;
  o = decide(s, 0.2, 0.95);
  EXPECT_EQ(o.decision, Decision::Superior);
  EXPECT_EQ(o.n_enrolled_per_arm, 120);
  s.final_stat = 0.95;
  EXPECT_EQ(decide(s, 0.2, 0.95).decision, Decision::NotEffective);
}

TEST(DesignConfig, Validation) {
  DesignConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.c_f = 0.96;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.c_s = 1.5;
  EXPECT_NO_THROW(cfg.validate());
  cfg.n_stage = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.priors = PriorSpec::defaults(5);
  EXPECT_THROW(cfg.validate(), DimensionMismatch);
}

TEST(SwitchSizes, StageOneIsTheLarger) {
  const SwitchSizes s{80, 90, 120, 160};
  EXPECT_EQ(s.stage1(), 120);
  EXPECT_EQ(s.stage2(Model::PO), 90);
  EXPECT_EQ(s.stage2(Model::NPO), 160);
}

TEST(OperatingCharacteristics, FutilityCutoffOfOneStopsEverything) {
  auto cfg = quick(Design::PO);
  cfg.c_f = 1.0;
  cfg.c_s = 1.5;
  const auto oc = operating_characteristics(cfg, scenario(1), 50);
  EXPECT_EQ(oc.pet, 100.0);
  EXPECT_EQ(oc.avg_n_per_arm, 60.0);
}

TEST(OperatingCharacteristics, UnreachableSuperiorityNeverRejects) {
  auto cfg = quick(Design::NPO);
  cfg.c_s = 1.01;
  EXPECT_EQ(operating_characteristics(cfg, scenario(5), 50).prn, 0.0);
}

TEST(OperatingCharacteristics, AverageSampleSizeIdentity) {
  for (Design d : {Design::PO, Design::NPO}) {
    const auto cfg = quick(d);
    for (int id : {1, 3, 7}) {
      const auto oc = operating_characteristics(cfg, scenario(id), 200);
      EXPECT_NEAR(oc.avg_n_per_arm, 60.0 * (2.0 - oc.pet / 100.0), 1e-9);
    }
  }
}

TEST(OperatingCharacteristics, SingleTrialIsItsOwnIndicator) {
  const auto oc = operating_characteristics(quick(Design::PO), scenario(3), 1);
  ASSERT_EQ(oc.outcomes.size(), 1u);
  const auto& t = oc.outcomes[0];
  EXPECT_EQ(oc.pet, t.decision == Decision::StoppedFutile ? 100.0 : 0.0);
  EXPECT_EQ(oc.prn, t.decision == Decision::Superior ? 100.0 : 0.0);
  EXPECT_EQ(oc.avg_n_per_arm, static_cast<double>(t.n_enrolled_per_arm));
}

TEST(OperatingCharacteristics, DecisionsAreReplayable) {
  for (Design d : {Design::PO, Design::NPO, Design::Switch}) {
    auto cfg = quick(d, Method::Bayesian);
    const auto oc = operating_characteristics(cfg, scenario(7), d == Design::Switch ? 10 : 30);
    for (const auto& t : oc.outcomes) {
      if (t.interim_stat < cfg.c_f) {
        EXPECT_EQ(t.decision, Decision::StoppedFutile);
        EXPECT_FALSE(t.final_stat);
      } else {
        ASSERT_TRUE(t.final_stat);
        EXPECT_EQ(t.decision, *t.final_stat > cfg.c_s ? Decision::Superior : Decision::NotEffective);
      }
      EXPECT_EQ(t.chosen_model.has_value(), d == Design::Switch);
    }
  }
}

TEST(OperatingCharacteristics, SwitchEnrollmentFollowsChosenModel) {
  const auto cfg = quick(Design::Switch, Method::Bayesian);
  const auto oc = operating_characteristics(cfg, scenario(8), 10);
  for (const auto& t : oc.outcomes) {
    ASSERT_TRUE(t.chosen_model);
    const std::int64_t full = 60 + cfg.switch_sizes.stage2(*t.chosen_model);
    EXPECT_EQ(t.n_enrolled_per_arm, t.decision == Decision::StoppedFutile ? 60 : full);
  }
}

TEST(OperatingCharacteristics, IndependentOfThreadCount) {
  auto cfg = quick(Design::NPO, Method::Bayesian);
  cfg.threads = 1;
  const auto one = operating_characteristics(cfg, scenario(6), 12);
  cfg.threads = 4;
  const auto four = operating_characteristics(cfg, scenario(6), 12);
  expect_same(one, four);
}

TEST(OperatingCharacteristics, SeedChangesResults) {
  auto cfg = quick(Design::PO);
  const auto a = operating_characteristics(cfg, scenario(3), 50);
  cfg.seed += 1;
  const auto b = operating_characteristics(cfg, scenario(3), 50);
  EXPECT_NE(a.outcomes[0].interim_stat, b.outcomes[0].interim_stat);
}

TEST(SimulateTrial, SharesTheStreamWithCompleteStatistics) {
  const auto cfg = quick(Design::PO, Method::Bayesian);
  for (std::uint64_t i = 0; i < 6; ++i) {
    Rng a = derive_stream(cfg.seed, i), b = derive_stream(cfg.seed, i);
    const auto t = simulate_trial(cfg, scenario(2).control, scenario(2).effect, a);
    const auto s = simulate_trial_statistics(cfg, scenario(2).control, scenario(2).effect, b);
    EXPECT_EQ(t.interim_stat, s.interim);
    if (t.final_stat) {
      EXPECT_EQ(*t.final_stat, s.final_stat);
    }
    const auto replay = decide(s, cfg.c_f, cfg.c_s);
    EXPECT_EQ(replay.decision, t.decision);
  }
}

TEST(SimulateStatistics, MatchesOperatingCharacteristicsUnderCommonStreams) {
  const auto cfg = quick(Design::PO);
  const auto stats = simulate_statistics(cfg, scenario(3).control, scenario(3).effect, 40);
  const auto oc = operating_characteristics(cfg, scenario(3), 40);
  ASSERT_EQ(stats.size(), oc.outcomes.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    EXPECT_EQ(decide(stats[i], cfg.c_f, cfg.c_s).decision, oc.outcomes[i].decision);
  }
}

TEST(ParallelFor, VisitsEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 3, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(20, 2,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(OperatingCharacteristics, RejectsMismatchedInputs) {
  auto cfg = quick(Design::PO);
  EXPECT_THROW(operating_characteristics(cfg, scenario(1), 0), InvalidArgument);
  const CategoryDistribution five({0.2, 0.2, 0.2, 0.2, 0.2});
  EXPECT_THROW(operating_characteristics(cfg, five, EffectSpec::null(5), 2), DimensionMismatch);
}
