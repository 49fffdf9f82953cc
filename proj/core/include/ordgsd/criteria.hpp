#pragma once

#include "ordgsd/ordinal.hpp"
#include "ordgsd/sampler.hpp"

namespace ordgsd {

/// Pr(delta < 0 | D): fraction of retained PO draws with a negative shift.
double prob_effective_po(const PosteriorDraws& draws);

/// Pr(mean utility(treatment) > mean utility(control) | D). Both arms'
/// category probabilities are implied by the same draw, so the control
/// reference comes from (mu, gamma) of each draw.
double prob_effective_npo(const PosteriorDraws& draws, const UtilityScale& scale);

}  // namespace ordgsd
