#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ordgsd/errors.hpp"
#include "ordgsd/ordinal.hpp"

using namespace ordgsd;

namespace {

// Logit-scale oracle: treatment cumulative = expit(logit(F_c) + log OR_c).
std::vector<double> oracle_treatment(const std::vector<double>& control,
                                     const std::vector<double>& ors) {
  std::vector<double> cum(control.size());
  std::partial_sum(control.begin(), control.end(), cum.begin());
  std::vector<double> out(control.size());
  double prev = 0.0;
  for (std::size_t c = 0; c < control.size(); ++c) {
    double f = 1.0;
    if (c + 1 < control.size()) {
      const double logit = std::log(cum[c] / (1.0 - cum[c])) + std::log(ors[c]);
      f = 1.0 / (1.0 + std::exp(-logit));
    }
    out[c] = f - prev;
    prev = f;
  }
  return out;
}

}  // namespace

TEST(CategoryDistribution, RejectsBadVectors) {
  EXPECT_THROW(CategoryDistribution({0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(CategoryDistribution({0.5, 0.3, 0.3}), InvalidArgument);
  EXPECT_THROW(CategoryDistribution({1.2, -0.1, -0.1}), InvalidArgument);
  EXPECT_NO_THROW(CategoryDistribution({0.2, 0.3, 0.5}));
}

TEST(CategoryDistribution, CumulativeEndsAtOne) {
  const auto cum = cumulative(reference_control());
  EXPECT_EQ(cum.back(), 1.0);
  EXPECT_NEAR(cum[0], 0.58, 1e-15);
  EXPECT_NEAR(cum[2], 0.80, 1e-15);
}

TEST(MeanUtility, ReferenceControl) {
  EXPECT_NEAR(mean_utility(reference_control(), reference_utility()), 74.20, 1e-9);
}

TEST(MeanUtility, PointMassGivesThatLevelsScore) {
  const auto u = reference_utility();
  for (std::size_t c = 0; c < 6; ++c) {
    EXPECT_DOUBLE_EQ(mean_utility(CategoryDistribution::point_mass(6, c), u), u.points()[c]);
  }
}

TEST(MeanUtility, UniformIsAverageOfPoints) {
  EXPECT_NEAR(mean_utility(CategoryDistribution::uniform(6), reference_utility()),
              (100.0 + 80 + 65 + 25 + 10 + 0) / 6.0, 1e-12);
}

TEST(UtilityScale, MustBeNonIncreasing) {
  EXPECT_THROW(UtilityScale({0, 50, 100}), InvalidArgument);
  EXPECT_NO_THROW(UtilityScale({100, 100, 0}));
}

TEST(ApplyOddsRatios, UnitRatiosAreIdentity) {
  const auto p0 = reference_control();
  const auto same = apply_odds_ratios(p0, EffectSpec::null(6));
  for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(same[c], p0[c], 1e-15);
}

TEST(ApplyOddsRatios, ReproducesFirstTreatmentRow) {
  const auto p1 = apply_odds_ratios(reference_control(), EffectSpec::proportional(1.2, 6));
  const double expected[] = {0.62, 0.05, 0.16, 0.03, 0.04, 0.11};
  for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(p1[c], expected[c], 0.005) << c;
}

TEST(ApplyOddsRatios, MatchesLogitOracle) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t levels = 3 + rep % 6;
    const auto probs = testgen::random_probs(rng, levels);
    const auto ors = testgen::random_odds_ratios(rng, levels - 1, 0.9, 1.1);
    const auto expected = oracle_treatment(probs, ors);
    try {
      const auto got = apply_odds_ratios(CategoryDistribution(probs), EffectSpec(ors));
      for (std::size_t c = 0; c < levels; ++c) EXPECT_NEAR(got[c], expected[c], 1e-12);
    } catch (const NonMonotoneResult&) {
      const bool negative =
          std::any_of(expected.begin(), expected.end(), [](double p) { return p < 0.0; });
      EXPECT_TRUE(negative);
    }
  }
}

TEST(ApplyOddsRatios, ProportionalEffectsAreAlwaysAdmissible) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t levels = 3 + rep % 6;
    const auto probs = testgen::random_probs(rng, levels);
    std::uniform_real_distribution<double> r(0.1, 10.0);
    EXPECT_NO_THROW(
        apply_odds_ratios(CategoryDistribution(probs), EffectSpec::proportional(r(rng), levels)));
  }
}

TEST(ApplyOddsRatios, RoundTripRecoversOddsRatios) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t levels = 3 + rep % 6;
    const CategoryDistribution control(testgen::random_probs(rng, levels));
    const auto ors = testgen::random_odds_ratios(rng, levels - 1);
    try {
      const auto treated = apply_odds_ratios(control, EffectSpec(ors));
      const auto back = cumulative_odds_ratios(control, treated);
      for (std::size_t c = 0; c < ors.size(); ++c) EXPECT_NEAR(back[c], ors[c], 1e-10);
      ++checked;
    } catch (const NonMonotoneResult&) {
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ApplyOddsRatios, HigherRatiosMoveMassToBetterLevels) {
  const auto p0 = reference_control();
  const auto u = reference_utility();
  double prev = mean_utility(p0, u);
  for (double r : {1.1, 1.3, 1.7, 2.5}) {
    const double now = mean_utility(apply_odds_ratios(p0, EffectSpec::proportional(r, 6)), u);
    EXPECT_GT(now, prev);
    prev = now;
  }
}

TEST(ApplyOddsRatios, ErrorsOnInadmissibleInput) {
  // Strongly crossing ratios make a category probability negative.
  EXPECT_THROW(apply_odds_ratios(CategoryDistribution({0.3, 0.01, 0.69}), EffectSpec({5.0, 0.2})),
               NonMonotoneResult);
  // No mass above the first boundary leaves its odds undefined.
  EXPECT_THROW(apply_odds_ratios(CategoryDistribution({1.0, 0.0, 0.0}), EffectSpec({1.2, 1.2})),
               InvalidArgument);
  EXPECT_THROW(apply_odds_ratios(reference_control(), EffectSpec::proportional(1.2, 5)),
               DimensionMismatch);
  EXPECT_THROW(EffectSpec({1.0, -1.0}), InvalidArgument);
}

TEST(ScenarioCatalog, UtilityDifferences) {
  const auto cat = scenario_catalog();
  ASSERT_EQ(cat.size(), 8u);
  // Dot products computed independently from the control row and the ORs.
  const double expected[] = {0.0, 3.1533, 5.6095, 7.5792, 9.1951, 4.1099, 4.8770, 5.5437};
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(cat[i].id, static_cast<int>(i + 1));
    EXPECT_NEAR(cat[i].mean_utility_difference, expected[i], 1e-4) << i;
  }
  EXPECT_TRUE(cat[4].effect.is_proportional());
  EXPECT_FALSE(cat[6].effect.is_proportional());
}

TEST(ScenarioCatalog, NonProportionalFamilyUtilityDifferences) {
  // OR = (1.5, 1.5, x, x, x) for x = 1, 1.05, ..., 1.3.
  const double expected[] = {3.218, 3.681, 4.110, 4.507, 4.877, 5.222, 5.544};
  for (int i = 0; i < 7; ++i) {
    const double x = 1.0 + 0.05 * i;
    const EffectSpec e({1.5, 1.5, x, x, x});
    EXPECT_NEAR(mean_utility_difference(reference_control(), e, reference_utility()), expected[i],
                0.0006)
        << x;
  }
}

TEST(SampleCounts, SumsToNAndTracksProbabilities) {
  Rng rng(3);
  const auto p0 = reference_control();
  std::vector<double> totals(6, 0.0);
  const int reps = 2000;
  for (int r = 0; r < reps; ++r) {
    const auto c = sample_counts(p0, 100, rng);
    EXPECT_EQ(std::accumulate(c.begin(), c.end(), std::int64_t{0}), 100);
    for (std::size_t k = 0; k < 6; ++k) totals[k] += static_cast<double>(c[k]);
  }
  for (std::size_t k = 0; k < 6; ++k) {
    const double mean = totals[k] / (reps * 100.0);
    const double se = std::sqrt(p0[k] * (1 - p0[k]) / (reps * 100.0));
    EXPECT_NEAR(mean, p0[k], 5 * se);
  }
}

TEST(SampleCounts, PointMassPutsEverythingInOneLevel) {
  Rng rng(1);
  const auto c = sample_counts(CategoryDistribution::point_mass(4, 2), 37, rng);
  EXPECT_EQ(c, (Counts{0, 0, 37, 0}));
}
