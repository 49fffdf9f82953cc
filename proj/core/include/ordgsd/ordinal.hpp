#pragma once

// Ordinal outcome distributions, cumulative odds-ratio effects and utility
// scores. Category index 0 is the most desirable level throughout.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ordgsd/random.hpp"

namespace ordgsd {

using Counts = std::vector<std::int64_t>;

inline constexpr std::size_t kMinLevels = 3;

/// Probability vector over C >= 3 ordered levels.
class CategoryDistribution {
 public:
  /// Throws InvalidArgument unless every entry is in [0,1] and the entries
  /// sum to 1 within 1e-12.
  explicit CategoryDistribution(std::vector<double> probs);

  static CategoryDistribution point_mass(std::size_t levels, std::size_t level);
  static CategoryDistribution uniform(std::size_t levels);

  std::size_t levels() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t c) const { return probs_[c]; }

 private:
  std::vector<double> probs_;
};

/// Partial sums; the last entry is exactly 1.
std::vector<double> cumulative(const CategoryDistribution& dist);

/// Treatment effect as cumulative odds ratios, one per category boundary.
/// OR_c = odds(treatment P(Y <= c)) / odds(control P(Y <= c)); OR > 1 means
/// the treatment moves mass toward the better (lower) levels.
class EffectSpec {
 public:
  explicit EffectSpec(std::vector<double> odds_ratios);

  static EffectSpec proportional(double odds_ratio, std::size_t levels);
  static EffectSpec null(std::size_t levels) { return proportional(1.0, levels); }

  std::span<const double> odds_ratios() const noexcept { return odds_ratios_; }
  std::size_t boundaries() const noexcept { return odds_ratios_.size(); }
  std::size_t levels() const noexcept { return odds_ratios_.size() + 1; }
  bool is_proportional() const noexcept;

  /// Model-scale shifts delta_c = -log(OR_c); negative means benefit.
  std::vector<double> log_odds_shifts() const;

 private:
  std::vector<double> odds_ratios_;
};

/// Treatment distribution whose boundary odds are OR_c times the control's.
/// Throws NonMonotoneResult if the implied probabilities are negative and
/// InvalidArgument if a control cumulative reaches 1 before the last
/// boundary, where the odds are undefined.
CategoryDistribution apply_odds_ratios(const CategoryDistribution& control,
                                       const EffectSpec& effect);

/// Boundary-wise odds ratios of `treatment` against `control`.
std::vector<double> cumulative_odds_ratios(const CategoryDistribution& control,
                                           const CategoryDistribution& treatment);

/// Utility points per level, non-increasing from the best level to the worst.
class UtilityScale {
 public:
  explicit UtilityScale(std::vector<double> points);

  std::size_t levels() const noexcept { return points_.size(); }
  std::span<const double> points() const noexcept { return points_; }

 private:
  std::vector<double> points_;
};

double mean_utility(const CategoryDistribution& dist, const UtilityScale& scale);
double mean_utility(std::span<const double> probs, const UtilityScale& scale);

double mean_utility_difference(const CategoryDistribution& control, const EffectSpec& effect,
                               const UtilityScale& scale);

struct Scenario {
  int id = 0;
  CategoryDistribution control;
  EffectSpec effect;
  double mean_utility_difference = 0.0;
};

/// Six-level clinical-status distribution used as the control arm of every
/// catalogued scenario.
CategoryDistribution reference_control();

/// (100, 80, 65, 25, 10, 0).
UtilityScale reference_utility();

/// Scenarios 1-8: 1-5 proportional with OR 1, 1.2, 1.4, 1.6, 1.8; 6-8
/// non-proportional with OR (1.5, 1.5, x, x, x) for x = 1.1, 1.2, 1.3.
std::vector<Scenario> scenario_catalog();

/// Multinomial(n, probs) counts by sequential conditional binomials.
Counts sample_counts(const CategoryDistribution& dist, std::int64_t n, Rng& rng);

}  // namespace ordgsd
