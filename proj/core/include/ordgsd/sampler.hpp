#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ordgsd/model.hpp"
#include "ordgsd/random.hpp"

namespace ordgsd {

/// How to read the second argument of the cutpoint prior Normal(0, 0.1).
enum class CutpointPriorReading {
  Precision,  ///< precision 0.1, i.e. variance 10
  Variance,   ///< variance 0.1
};

struct PriorSpec {
  double mu_mean = 0.0;
  double mu_var = 1.0;
  double cutpoint_var = 10.0;
  std::vector<double> delta_means;  ///< one per boundary
  std::vector<double> delta_vars;   ///< one per boundary

  /// mu ~ N(0,1); cutpoints N(0, 10) or N(0, 0.1); shifts N(0, 10).
  static PriorSpec defaults(std::size_t levels,
                            CutpointPriorReading reading = CutpointPriorReading::Precision);

  /// The PO model has one shift; its prior uses the average of the
  /// per-boundary moments.
  double po_delta_mean() const;
  double po_delta_var() const;

  void validate(std::size_t levels) const;
};

struct McmcConfig {
  std::size_t n_burn = 1000;
  std::size_t n_keep = 2000;
  double step_mu = 0.3;
  double step_gamma = 0.2;
  double step_delta = 0.2;
  bool adapt = true;
  bool fix_mu = false;  ///< hold mu at 0 instead of sampling it

  void validate() const;
};

/// Retained draws, one row per iteration:
///   PO:  (mu, gamma_1..gamma_K, delta)
///   NPO: (mu, gamma_1..gamma_K, delta_1..delta_K)
/// with K = levels - 1. Immutable once built.
class PosteriorDraws {
 public:
  PosteriorDraws(Model model, std::size_t levels, std::vector<double> values,
                 double acceptance_rate);

  Model model() const noexcept { return model_; }
  std::size_t levels() const noexcept { return levels_; }
  std::size_t boundaries() const noexcept { return levels_ - 1; }
  std::size_t n_params() const noexcept { return n_params_; }
  std::size_t size() const noexcept { return values_.size() / n_params_; }
  double acceptance_rate() const noexcept { return acceptance_rate_; }

  std::span<const double> row(std::size_t i) const;
  double mu(std::size_t i) const { return row(i)[0]; }
  std::span<const double> gamma(std::size_t i) const { return row(i).subspan(1, boundaries()); }
  /// PO only; throws WrongModel for NPO draws.
  double delta(std::size_t i) const;
  /// Shift entries: one under PO, K under NPO.
  std::span<const double> deltas(std::size_t i) const { return row(i).subspan(1 + boundaries()); }
  /// Per-boundary shifts of draw i (the PO scalar replicated).
  std::vector<double> boundary_shifts(std::size_t i) const;

 private:
  Model model_;
  std::size_t levels_;
  std::size_t n_params_;
  std::vector<double> values_;
  double acceptance_rate_;
};

std::size_t parameter_count(Model model, std::size_t levels) noexcept;

/// Unnormalized log posterior: likelihood plus independent normal priors,
/// -inf when cutpoints are not strictly increasing.
double log_posterior(const TwoArmData& data, Model model, const PriorSpec& priors,
                     std::span<const double> params, bool fix_mu = false);

/// Random-walk Metropolis within Gibbs. Per sweep: mu, a joint location
/// shift of (mu, gamma), each cutpoint, each shift. Step sizes adapt during
/// burn-in toward 25-45% acceptance and are frozen afterwards. Throws
/// ChainDegenerate if the retained-phase acceptance rate is below 0.01.
PosteriorDraws fit(const TwoArmData& data, Model model, const PriorSpec& priors,
                   const McmcConfig& cfg, Rng& rng);

}  // namespace ordgsd
