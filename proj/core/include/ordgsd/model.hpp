#pragma once

// Cumulative-logit models for two-arm ordinal data.
//
// Control arm:   P(Y <= c) = F(gamma_c - mu)
// Treatment arm: P(Y <= c) = F(gamma_c - mu - delta_c)
//
// F is the standard logistic CDF. Under PO every delta_c equals one scalar
// delta; under NPO each boundary has its own shift. delta < 0 favours the
// treatment.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ordgsd/ordinal.hpp"

namespace ordgsd {

enum class Model { PO, NPO };

std::string_view to_string(Model m) noexcept;

enum class Arm { Control, Treatment };

struct ArmData {
  Arm arm = Arm::Control;
  Counts counts;

  std::int64_t total() const noexcept;
};

struct TwoArmData {
  ArmData control{Arm::Control, {}};
  ArmData treatment{Arm::Treatment, {}};

  /// Validates equal lengths >= 3, non-negative counts and a positive total
  /// in each arm.
  static TwoArmData from_counts(Counts control, Counts treatment);

  std::size_t levels() const noexcept { return control.counts.size(); }

  /// Element-wise sum of the two data sets (stage pooling).
  TwoArmData pooled_with(const TwoArmData& more) const;
};

double logistic(double x) noexcept;

/// P(a < Z <= b) for a standard logistic Z; either end may be infinite.
double logistic_mass(double a, double b) noexcept;

/// Category probabilities implied by location `mu`, cutpoints `gamma` and
/// per-boundary `shifts` (empty span = no shift). Entries may be negative
/// when the shifted cutpoints are not increasing.
std::vector<double> category_probs(double mu, std::span<const double> gamma,
                                   std::span<const double> shifts = {});

/// Sum over arms and categories of count * log(probability); -inf if any
/// category probability is <= 0.
double log_likelihood_po(const TwoArmData& data, double mu, std::span<const double> gamma,
                         double delta);

double log_likelihood_npo(const TwoArmData& data, double mu, std::span<const double> gamma,
                          std::span<const double> delta);

}  // namespace ordgsd
