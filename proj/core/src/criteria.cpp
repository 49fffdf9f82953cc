#include "ordgsd/criteria.hpp"

#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

double prob_effective_po(const PosteriorDraws& draws) {
  if (draws.model() != Model::PO) throw WrongModel("prob_effective_po needs PO draws");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws.size(); ++i) hits += draws.delta(i) < 0.0 ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(draws.size());
}

double prob_effective_npo(const PosteriorDraws& draws, const UtilityScale& scale) {
  if (draws.model() != Model::NPO) throw WrongModel("prob_effective_npo needs NPO draws");
  if (scale.levels() != draws.levels()) {
    throw DimensionMismatch(fmt::format("utility scale has {} levels, model has {}",
                                        scale.levels(), draws.levels()));
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto ctr = category_probs(draws.mu(i), draws.gamma(i));
    const auto trt = category_probs(draws.mu(i), draws.gamma(i), draws.deltas(i));
    hits += mean_utility(trt, scale) > mean_utility(ctr, scale) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(draws.size());
}

}  // namespace ordgsd
