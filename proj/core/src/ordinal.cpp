#include "ordgsd/ordinal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

CategoryDistribution::CategoryDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < kMinLevels) {
    throw InvalidArgument(fmt::format("distribution needs at least {} levels, got {}", kMinLevels,
                                      probs_.size()));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument(fmt::format("category probability {} outside [0,1]", p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument(fmt::format("category probabilities sum to {:.15g}, not 1", total));
  }
}

CategoryDistribution CategoryDistribution::point_mass(std::size_t levels, std::size_t level) {
  if (level >= levels) throw InvalidArgument("point mass level out of range");
  std::vector<double> p(levels, 0.0);
  p[level] = 1.0;
  return CategoryDistribution(std::move(p));
}

CategoryDistribution CategoryDistribution::uniform(std::size_t levels) {
  if (levels < kMinLevels) throw InvalidArgument("distribution needs at least 3 levels");
  std::vector<double> p(levels, 1.0 / static_cast<double>(levels));
  // Pin the total so the 1e-12 check cannot trip on accumulated rounding.
  p.back() = 1.0 - std::accumulate(p.begin(), p.end() - 1, 0.0);
  return CategoryDistribution(std::move(p));
}

std::vector<double> cumulative(const CategoryDistribution& dist) {
  std::vector<double> out(dist.levels());
  std::partial_sum(dist.probs().begin(), dist.probs().end(), out.begin());
  for (double& v : out) v = std::min(v, 1.0);
  out.back() = 1.0;
  return out;
}

EffectSpec::EffectSpec(std::vector<double> odds_ratios) : odds_ratios_(std::move(odds_ratios)) {
  if (odds_ratios_.size() + 1 < kMinLevels) {
    throw InvalidArgument("effect needs at least 2 boundary odds ratios");
  }
  for (double r : odds_ratios_) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InvalidArgument(fmt::format("odds ratio {} is not a positive finite number", r));
    }
  }
}

EffectSpec EffectSpec::proportional(double odds_ratio, std::size_t levels) {
  if (levels < kMinLevels) throw InvalidArgument("effect needs at least 3 levels");
  return EffectSpec(std::vector<double>(levels - 1, odds_ratio));
}

bool EffectSpec::is_proportional() const noexcept {
  return std::all_of(odds_ratios_.begin(), odds_ratios_.end(),
                     [&](double r) { return r == odds_ratios_.front(); });
}

std::vector<double> EffectSpec::log_odds_shifts() const {
  std::vector<double> out(odds_ratios_.size());
  std::transform(odds_ratios_.begin(), odds_ratios_.end(), out.begin(),
                 [](double r) { return -std::log(r); });
  return out;
}

CategoryDistribution apply_odds_ratios(const CategoryDistribution& control,
                                       const EffectSpec& effect) {
  const std::size_t levels = control.levels();
  if (effect.levels() != levels) {
    throw DimensionMismatch(fmt::format("effect has {} boundaries, control has {} levels",
                                        effect.boundaries(), levels));
  }
  const auto cum = cumulative(control);
  std::vector<double> treated_cum(levels, 1.0);
  for (std::size_t c = 0; c + 1 < levels; ++c) {
    if (cum[c] >= 1.0) {
      throw InvalidArgument(
          fmt::format("control cumulative probability reaches 1 at boundary {}", c + 1));
    }
    const double odds = effect.odds_ratios()[c] * cum[c] / (1.0 - cum[c]);
    treated_cum[c] = odds / (1.0 + odds);
  }
  std::vector<double> probs(levels);
  double prev = 0.0;
  for (std::size_t c = 0; c < levels; ++c) {
    probs[c] = treated_cum[c] - prev;
    prev = treated_cum[c];
    if (probs[c] < 0.0) {
      if (probs[c] > -1e-15) {
        probs[c] = 0.0;
      } else {
        throw NonMonotoneResult(
            fmt::format("odds ratios imply probability {:.6g} for level {}", probs[c], c + 1));
      }
    }
  }
  return CategoryDistribution(std::move(probs));
}

std::vector<double> cumulative_odds_ratios(const CategoryDistribution& control,
                                           const CategoryDistribution& treatment) {
  if (control.levels() != treatment.levels()) {
    throw DimensionMismatch("distributions have different numbers of levels");
  }
  const auto a = cumulative(control);
  const auto b = cumulative(treatment);
  std::vector<double> out(control.levels() - 1);
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = (b[c] / (1.0 - b[c])) / (a[c] / (1.0 - a[c]));
  }
  return out;
}

UtilityScale::UtilityScale(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < kMinLevels) throw InvalidArgument("utility scale needs at least 3 levels");
  for (std::size_t c = 1; c < points_.size(); ++c) {
    if (points_[c] > points_[c - 1]) {
      throw InvalidArgument(fmt::format(
          "utility must be non-increasing from best to worst level (level {} > level {})", c + 1,
          c));
    }
  }
}

double mean_utility(std::span<const double> probs, const UtilityScale& scale) {
  if (probs.size() != scale.levels()) {
    throw DimensionMismatch(fmt::format("distribution has {} levels, utility scale has {}",
                                        probs.size(), scale.levels()));
  }
  return std::inner_product(probs.begin(), probs.end(), scale.points().begin(), 0.0);
}

double mean_utility(const CategoryDistribution& dist, const UtilityScale& scale) {
  return mean_utility(dist.probs(), scale);
}

double mean_utility_difference(const CategoryDistribution& control, const EffectSpec& effect,
                               const UtilityScale& scale) {
  return mean_utility(apply_odds_ratios(control, effect), scale) - mean_utility(control, scale);
}

CategoryDistribution reference_control() {
  return CategoryDistribution({0.58, 0.05, 0.17, 0.03, 0.04, 0.13});
}

UtilityScale reference_utility() { return UtilityScale({100, 80, 65, 25, 10, 0}); }

std::vector<Scenario> scenario_catalog() {
  const auto control = reference_control();
  const auto scale = reference_utility();
  const std::size_t levels = control.levels();

  std::vector<EffectSpec> effects;
  for (double r : {1.0, 1.2, 1.4, 1.6, 1.8}) effects.push_back(EffectSpec::proportional(r, levels));
  for (double r : {1.1, 1.2, 1.3}) effects.emplace_back(std::vector<double>{1.5, 1.5, r, r, r});

  std::vector<Scenario> out;
  int id = 1;
  for (auto& e : effects) {
    const double diff = mean_utility_difference(control, e, scale);
    out.push_back(Scenario{id++, control, std::move(e), diff});
  }
  return out;
}

Counts sample_counts(const CategoryDistribution& dist, std::int64_t n, Rng& rng) {
  if (n < 1) throw InvalidArgument("sample size must be at least 1");
  Counts counts(dist.levels(), 0);
  std::int64_t remaining = n;
  double mass_left = 1.0;
  for (std::size_t c = 0; c + 1 < dist.levels() && remaining > 0; ++c) {
    const double p = mass_left > 0.0 ? std::clamp(dist[c] / mass_left, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> binom(remaining, p);
    counts[c] = binom(rng);
    remaining -= counts[c];
    mass_left -= dist[c];
  }
  counts.back() += remaining;
  return counts;
}

}  // namespace ordgsd
