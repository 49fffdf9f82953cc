#pragma once

// Two-stage group-sequential trials under the PO, NPO and PO/NPO-switch
// designs, and their operating characteristics over many simulated trials.

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ordgsd/ordinal.hpp"
#include "ordgsd/rjmcmc.hpp"
#include "ordgsd/sampler.hpp"

namespace ordgsd {

enum class Design { PO, NPO, Switch };
enum class Method { Bayesian, Frequentist };

std::string_view to_string(Design d) noexcept;
std::string_view to_string(Method m) noexcept;

/// Per-arm stage sizes for the switch design. Stage 1 enrolls
/// max(po_stage1, npo_stage1); stage 2 enrolls the chosen model's size.
struct SwitchSizes {
  std::int64_t po_stage1 = 100;
  std::int64_t po_stage2 = 100;
  std::int64_t npo_stage1 = 100;
  std::int64_t npo_stage2 = 100;

  std::int64_t stage1() const noexcept { return std::max(po_stage1, npo_stage1); }
  std::int64_t stage2(Model chosen) const noexcept {
    return chosen == Model::PO ? po_stage2 : npo_stage2;
  }
};

struct DesignConfig {
  Design design = Design::PO;
  std::int64_t n_stage = 100;  ///< per arm per stage (PO / NPO designs)
  SwitchSizes switch_sizes{};
  double c_f = 0.2;   ///< stop for futility when the interim criterion is below
  double c_s = 0.95;  ///< declare superiority when the final criterion is above
  PriorSpec priors = PriorSpec::defaults(6);
  McmcConfig mcmc{};
  RjmcmcConfig rjmcmc{};
  UtilityScale utility = reference_utility();
  Method method = Method::Bayesian;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  std::size_t levels() const noexcept { return utility.levels(); }
  std::int64_t stage1_size() const noexcept;
  std::int64_t max_per_arm() const noexcept;

  /// Checks cutoff ordering, sizes, and that priors, utility and MCMC
  /// settings agree on the number of levels.
  void validate() const;
};

enum class Decision { StoppedFutile, Superior, NotEffective };

std::string_view to_string(Decision d) noexcept;

struct TrialOutcome {
  Decision decision = Decision::NotEffective;
  std::int64_t n_enrolled_per_arm = 0;
  double interim_stat = 0.0;
  std::optional<double> final_stat;
  std::optional<Model> chosen_model;  ///< switch design only
  double posterior_prob_npo = 0.0;    ///< switch design only
};

/// Both analyses of a trial carried through stage 2 regardless of the
/// interim result. Neither statistic depends on the cutoffs.
struct TrialStatistics {
  double interim = 0.0;
  double final_stat = 0.0;
  std::int64_t stage1_per_arm = 0;
  std::int64_t stage2_per_arm = 0;
  std::optional<Model> chosen_model;
  double posterior_prob_npo = 0.0;
  bool valid = true;
};

/// Apply the cutoffs to precomputed statistics.
TrialOutcome decide(const TrialStatistics& stats, double c_f, double c_s);

/// One trial with early stopping. Estimation failures surface as
/// TrialInvalid.
TrialOutcome simulate_trial(const DesignConfig& cfg, const CategoryDistribution& control,
                            const EffectSpec& effect, Rng& rng);

/// One trial with both stages always run; same random stream consumption
/// as simulate_trial up to the point where simulate_trial stops.
TrialStatistics simulate_trial_statistics(const DesignConfig& cfg,
                                          const CategoryDistribution& control,
                                          const EffectSpec& effect, Rng& rng);

inline constexpr int kMaxTrialAttempts = 3;

struct OperatingCharacteristics {
  double pet = 0.0;            ///< % stopped for futility
  double prn = 0.0;            ///< % declared superior
  double avg_n_per_arm = 0.0;  ///< mean enrolled per arm
  std::size_t n_trials = 0;    ///< trials requested
  std::size_t n_invalid = 0;   ///< trials that failed every attempt
  std::size_t n_reruns = 0;    ///< extra attempts used
  double npo_selection_pct = 0.0;  ///< switch design: % of trials choosing NPO
  std::vector<TrialOutcome> outcomes;  ///< valid trials in index order
};

/// Trial i draws from derive_stream(cfg.seed, i, attempt); failed trials
/// are retried up to kMaxTrialAttempts times, then excluded and counted.
OperatingCharacteristics operating_characteristics(const DesignConfig& cfg,
                                                   const CategoryDistribution& control,
                                                   const EffectSpec& effect,
                                                   std::size_t n_trials);

OperatingCharacteristics operating_characteristics(const DesignConfig& cfg,
                                                   const Scenario& scenario,
                                                   std::size_t n_trials);

/// Cutoff-free statistics for n_trials trials with the same per-trial
/// streams as operating_characteristics (common random numbers).
std::vector<TrialStatistics> simulate_statistics(const DesignConfig& cfg,
                                                 const CategoryDistribution& control,
                                                 const EffectSpec& effect,
                                                 std::size_t n_trials);

/// Calls fn(i) for i in [0, n) on up to `threads` workers; rethrows the
/// first exception.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace ordgsd
