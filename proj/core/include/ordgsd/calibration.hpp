#pragma once

// Grid calibration of the futility/superiority cutoffs under the null and
// sample-size search to a power target. Every candidate cutoff pair is
// scored on the same simulated trials (common random numbers), so a grid
// costs one batch of simulations per scenario rather than one per pair.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ordgsd/trial.hpp"

namespace ordgsd {

struct CutoffGrid {
  std::vector<double> futility;
  std::vector<double> superiority;

  /// futility 0.05..0.30 step 0.05; superiority 0.80..0.99 step 0.01.
  static CutoffGrid defaults();
  void validate() const;
};

struct GridPoint {
  double c_f = 0.0;
  double c_s = 0.0;
  double type1 = 0.0;
  std::optional<double> power;
};

struct CalibrationResult {
  double c_f = 0.0;
  double c_s = 0.0;
  double achieved_type1 = 0.0;
  std::optional<double> achieved_power;   ///< when alternative statistics were supplied
  std::optional<double> confirmed_type1;  ///< Bayesian re-run at the chosen pair
  std::vector<GridPoint> grid;
};

/// Rejection rate of the (c_f, c_s) rule over valid trials.
double rejection_rate(const std::vector<TrialStatistics>& stats, double c_f, double c_s);

/// Pure selection over cached statistics. Feasible pairs have null
/// rejection rate <= alpha. Among them the pair with the highest power
/// proxy wins: power under `alternative` when given, otherwise the null
/// rejection rate itself. Ties go to the larger c_f, then the smaller c_s.
/// Throws NoFeasiblePair.
CalibrationResult select_cutoffs(const std::vector<TrialStatistics>& null_stats,
                                 const std::vector<TrialStatistics>* alternative, double alpha,
                                 const CutoffGrid& grid);

struct CalibrationOptions {
  double alpha = 0.05;
  CutoffGrid grid = CutoffGrid::defaults();
  std::size_t n_trials = 1000;
  bool confirm_bayesian = false;  ///< re-run the chosen pair with the Bayesian method
};

/// Simulates the null (all odds ratios 1) under `cfg` (its cutoffs are
/// ignored) and selects cutoffs.
CalibrationResult calibrate_thresholds(const DesignConfig& cfg,
                                       const CategoryDistribution& control,
                                       const CalibrationOptions& opts);

struct SampleSizePoint {
  Design design = Design::PO;
  std::int64_t n = 0;
  bool feasible = false;
  double c_f = 0.0;
  double c_s = 0.0;
  double type1 = 0.0;
  double power = 0.0;
};

struct SampleSizeResult {
  std::int64_t n_per_arm_per_stage = 0;
  double achieved_power = 0.0;
  double c_f = 0.0;
  double c_s = 0.0;
  double type1 = 0.0;
  std::optional<double> confirmed_type1;   ///< Bayesian re-run at the returned design
  std::vector<SampleSizePoint> evaluated;  ///< every n tried, ascending per design
  std::optional<SwitchSizes> switch_sizes;
};

/// Smallest n on `n_grid` whose calibrated design reaches `power_target`
/// at `effect`. The null and alternative runs share per-trial streams.
/// Throws TargetUnreachable (with the largest-n power) when no n qualifies.
SampleSizeResult find_sample_size(const DesignConfig& cfg, const EffectSpec& effect,
                                  const CategoryDistribution& control, double power_target,
                                  const std::vector<std::int64_t>& n_grid,
                                  const CalibrationOptions& opts);

/// Switch design sizing: sizes the PO and NPO designs separately, uses each
/// as both stages of the corresponding model path, then calibrates the
/// switch cutoffs and reports the switch design's power.
SampleSizeResult find_switch_sample_size(const DesignConfig& cfg, const EffectSpec& effect,
                                         const CategoryDistribution& control,
                                         double power_target,
                                         const std::vector<std::int64_t>& po_grid,
                                         const std::vector<std::int64_t>& npo_grid,
                                         const CalibrationOptions& opts);

}  // namespace ordgsd
