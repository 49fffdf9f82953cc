#include <random>

#include <gtest/gtest.h>

#include "ordgsd/errors.hpp"
#include "ordgsd/report.hpp"

using namespace ordgsd;

TEST(RoundSignificant, FourDigits) {
  EXPECT_EQ(round_significant(77.3456), 77.35);
  EXPECT_EQ(round_significant(0.012345), 0.01235);
  EXPECT_EQ(round_significant(132.0), 132.0);
  EXPECT_EQ(round_significant(0.0), 0.0);
  EXPECT_EQ(format_number(4.10990), "4.11");
  EXPECT_EQ(format_number(200.0), "200");
}

TEST(Csv, HeaderMatchesTableLayout) {
  const auto csv = rows_to_csv({});
  EXPECT_EQ(csv, "Scenario,Effect Size,PET (%),PRN (%),Average Sample Size\n");
}

TEST(Csv, RoundTripReproducesRows) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<ReportRow> rows;
    for (int i = 0; i < 8; ++i) {
      OperatingCharacteristics oc;
      oc.pet = u(rng);
      oc.prn = u(rng);
      oc.avg_n_per_arm = 100.0 + u(rng);
      std::string label = i % 3 == 0 ? "Scenario, \"quoted\"" : "Scenario " + std::to_string(i);
      rows.push_back(make_report_row(label, u(rng) / 10.0, oc));
    }
    EXPECT_EQ(rows_from_csv(rows_to_csv(rows)), rows);
  }
}

TEST(Csv, MalformedInputIsRejected) {
  EXPECT_THROW(rows_from_csv("nope\n"), InvalidArgument);
  EXPECT_THROW(rows_from_csv(std::string(kReportHeader) + "\nA,1,2\n"), InvalidArgument);
  EXPECT_THROW(rows_from_csv(std::string(kReportHeader) + "\nA,x,2,3,4\n"), InvalidArgument);
}

TEST(EffectSize, OddsRatioForProportionalRowsUtilityOtherwise) {
  const auto control = reference_control();
  const auto u = reference_utility();
  const auto po = EffectSpec::proportional(1.4, 6);
  const EffectSpec npo({1.5, 1.5, 1.1, 1.1, 1.1});
  EXPECT_EQ(effect_size(Design::PO, control, po, u), 1.4);
  EXPECT_NEAR(effect_size(Design::NPO, control, po, u), 5.6095, 1e-4);
  EXPECT_NEAR(effect_size(Design::Switch, control, npo, u), 4.1099, 1e-4);
  EXPECT_EQ(effect_size(Design::Switch, control, po, u), 1.4);
}

TEST(ScenarioJson, CarriesBothEffectMeasures) {
  OperatingCharacteristics oc;
  oc.n_trials = 2;
  oc.outcomes.resize(2);
  oc.outcomes[0].decision = Decision::StoppedFutile;
  oc.outcomes[1].decision = Decision::Superior;
  const auto j = scenario_json("S", Design::PO, reference_control(),
                               EffectSpec::proportional(1.2, 6), reference_utility(), oc);
  EXPECT_EQ(j["effect_size_kind"], "odds_ratio");
  EXPECT_NEAR(j["mean_utility_difference"].get<double>(), 3.1533, 1e-4);
  EXPECT_EQ(j["trials"]["decisions"], "FS");
}
