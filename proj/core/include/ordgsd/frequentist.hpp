#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ordgsd/model.hpp"
#include "ordgsd/random.hpp"

namespace ordgsd {

struct PoMaximumLikelihood {
  double delta = 0.0;
  double std_error = 0.0;
  std::vector<double> cutpoints;  ///< on the merged category set
  std::size_t merged_levels = 0;
  int iterations = 0;
};

/// Merge categories that are empty in both arms into their better-side
/// neighbour (or the next level for the first category).
TwoArmData merge_empty_categories(const TwoArmData& data);

/// Newton-Raphson maximum likelihood for the PO model with mu fixed at 0.
/// The standard error comes from the observed information. Throws
/// FitFailure when the iteration does not converge (separation, sparse
/// categories).
PoMaximumLikelihood fit_po_mle(const TwoArmData& data);

inline constexpr std::size_t kBootstrapResamples = 1000;

/// Fast approximation of the decision criterion.
///   PO:  Phi(-delta_hat / se) from the maximum-likelihood fit.
///   NPO: share of parametric bootstrap resamples of the per-arm category
///        proportions in which the treatment mean utility exceeds the
///        control's (ties count one half).
/// Requires each arm total >= number of levels.
double frequentist_prob_effective(const TwoArmData& data, Model model,
                                  const std::optional<UtilityScale>& scale, Rng& rng,
                                  std::size_t resamples = kBootstrapResamples);

}  // namespace ordgsd
