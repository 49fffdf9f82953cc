#include "ordgsd/calibration.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

namespace {

std::vector<double> steps(double from, double to, double by) {
  std::vector<double> out;
  const int n = static_cast<int>(std::lround((to - from) / by));
  for (int i = 0; i <= n; ++i) out.push_back(std::round((from + i * by) * 1e6) / 1e6);
  return out;
}

DesignConfig with_cutoffs_cleared(DesignConfig cfg) {
  // Cutoffs play no part in statistic generation; keep validate() happy.
  cfg.c_f = 0.0;
  cfg.c_s = 1.0;
  return cfg;
}

}  // namespace

CutoffGrid CutoffGrid::defaults() {
  return CutoffGrid{steps(0.05, 0.30, 0.05), steps(0.80, 0.99, 0.01)};
}

void CutoffGrid::validate() const {
  if (futility.empty() || superiority.empty()) throw InvalidArgument("cutoff grid is empty");
  for (double v : futility) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("futility grid values must lie in [0,1]");
  }
  for (double v : superiority) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument("superiority grid values must lie in [0,1]");
    }
  }
}

double rejection_rate(const std::vector<TrialStatistics>& stats, double c_f, double c_s) {
  std::size_t valid = 0, rejected = 0;
  for (const auto& s : stats) {
    if (!s.valid) continue;
    ++valid;
    rejected += decide(s, c_f, c_s).decision == Decision::Superior ? 1 : 0;
  }
  return valid == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(valid);
}

CalibrationResult select_cutoffs(const std::vector<TrialStatistics>& null_stats,
                                 const std::vector<TrialStatistics>* alternative, double alpha,
                                 const CutoffGrid& grid) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  grid.validate();

  CalibrationResult out;
  const GridPoint* best = nullptr;
  auto proxy = [](const GridPoint& g) { return g.power ? *g.power : g.type1; };
  for (double c_f : grid.futility) {
    for (double c_s : grid.superiority) {
      GridPoint g{c_f, c_s, rejection_rate(null_stats, c_f, c_s), std::nullopt};
      if (alternative) g.power = rejection_rate(*alternative, c_f, c_s);
      out.grid.push_back(g);
    }
  }
  for (const auto& g : out.grid) {
    if (g.type1 > alpha) continue;
    if (!best || proxy(g) > proxy(*best) ||
        (proxy(g) == proxy(*best) &&
         (g.c_f > best->c_f || (g.c_f == best->c_f && g.c_s < best->c_s)))) {
      best = &g;
    }
  }
  if (!best) {
    throw NoFeasiblePair(
        fmt::format("no cutoff pair on the grid keeps the type I error at or below {}", alpha));
  }
  out.c_f = best->c_f;
  out.c_s = best->c_s;
  out.achieved_type1 = best->type1;
  out.achieved_power = best->power;
  return out;
}

CalibrationResult calibrate_thresholds(const DesignConfig& cfg,
                                       const CategoryDistribution& control,
                                       const CalibrationOptions& opts) {
  const DesignConfig base = with_cutoffs_cleared(cfg);
  const auto null_effect = EffectSpec::null(control.levels());
  const auto stats = simulate_statistics(base, control, null_effect, opts.n_trials);
  auto result = select_cutoffs(stats, nullptr, opts.alpha, opts.grid);
  if (opts.confirm_bayesian) {
    DesignConfig bayes = base;
    bayes.method = Method::Bayesian;
    const auto confirm = simulate_statistics(bayes, control, null_effect, opts.n_trials);
    result.confirmed_type1 = rejection_rate(confirm, result.c_f, result.c_s);
  }
  return result;
}

namespace {

double confirm_type1(const DesignConfig& at, const CategoryDistribution& control,
                     const SampleSizePoint& point, const CalibrationOptions& opts) {
  DesignConfig bayes = at;
  bayes.method = Method::Bayesian;
  const auto stats =
      simulate_statistics(bayes, control, EffectSpec::null(control.levels()), opts.n_trials);
  return rejection_rate(stats, point.c_f, point.c_s);
}

}  // namespace

SampleSizeResult find_sample_size(const DesignConfig& cfg, const EffectSpec& effect,
                                  const CategoryDistribution& control, double power_target,
                                  const std::vector<std::int64_t>& n_grid,
                                  const CalibrationOptions& opts) {
  if (!(power_target >= 0.0 && power_target < 1.0)) {
    throw InvalidArgument("power target must lie in [0,1)");
  }
  if (n_grid.empty() || !std::is_sorted(n_grid.begin(), n_grid.end()) ||
      std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end()) {
    throw InvalidArgument("sample-size grid must be non-empty and strictly increasing");
  }
  if (cfg.design == Design::Switch) {
    throw InvalidArgument("use find_switch_sample_size for the switch design");
  }
  const auto null_effect = EffectSpec::null(control.levels());

  SampleSizeResult result;
  for (std::int64_t n : n_grid) {
    DesignConfig at = with_cutoffs_cleared(cfg);
    at.n_stage = n;
    const auto null_stats = simulate_statistics(at, control, null_effect, opts.n_trials);
    const auto alt_stats = simulate_statistics(at, control, effect, opts.n_trials);
    SampleSizePoint point{cfg.design, n};
    try {
      const auto cal = select_cutoffs(null_stats, &alt_stats, opts.alpha, opts.grid);
      point.feasible = true;
      point.c_f = cal.c_f;
      point.c_s = cal.c_s;
      point.type1 = cal.achieved_type1;
      point.power = cal.achieved_power.value_or(0.0);
    } catch (const NoFeasiblePair&) {
    }
    result.evaluated.push_back(point);
    if (point.feasible && point.power >= power_target) {
      result.n_per_arm_per_stage = n;
      result.achieved_power = point.power;
      result.c_f = point.c_f;
      result.c_s = point.c_s;
      result.type1 = point.type1;
      if (opts.confirm_bayesian) result.confirmed_type1 = confirm_type1(at, control, point, opts);
      return result;
    }
  }
  const auto& last = result.evaluated.back();
  throw TargetUnreachable(
      fmt::format("power {:.3f} at the largest sample size {} is below the target {:.3f}",
                  last.power, last.n, power_target),
      last.n, last.power);
}

SampleSizeResult find_switch_sample_size(const DesignConfig& cfg, const EffectSpec& effect,
                                         const CategoryDistribution& control,
                                         double power_target,
                                         const std::vector<std::int64_t>& po_grid,
                                         const std::vector<std::int64_t>& npo_grid,
                                         const CalibrationOptions& opts) {
  DesignConfig po_cfg = cfg;
  po_cfg.design = Design::PO;
  DesignConfig npo_cfg = cfg;
  npo_cfg.design = Design::NPO;
  const auto po = find_sample_size(po_cfg, effect, control, power_target, po_grid, opts);
  const auto npo = find_sample_size(npo_cfg, effect, control, power_target, npo_grid, opts);

  DesignConfig sw = with_cutoffs_cleared(cfg);
  sw.design = Design::Switch;
  sw.switch_sizes = SwitchSizes{po.n_per_arm_per_stage, po.n_per_arm_per_stage,
                                npo.n_per_arm_per_stage, npo.n_per_arm_per_stage};
  const auto null_stats =
      simulate_statistics(sw, control, EffectSpec::null(control.levels()), opts.n_trials);
  const auto alt_stats = simulate_statistics(sw, control, effect, opts.n_trials);
  const auto cal = select_cutoffs(null_stats, &alt_stats, opts.alpha, opts.grid);

  SampleSizeResult result;
  result.n_per_arm_per_stage = sw.switch_sizes.stage1();
  result.achieved_power = cal.achieved_power.value_or(0.0);
  result.c_f = cal.c_f;
  result.c_s = cal.c_s;
  result.type1 = cal.achieved_type1;
  result.switch_sizes = sw.switch_sizes;
  if (opts.confirm_bayesian) {
    result.confirmed_type1 =
        confirm_type1(sw, control, SampleSizePoint{Design::Switch, 0, true, cal.c_f, cal.c_s}, opts);
  }
  result.evaluated = po.evaluated;
  result.evaluated.insert(result.evaluated.end(), npo.evaluated.begin(), npo.evaluated.end());
  if (result.achieved_power < power_target) {
    throw TargetUnreachable(
        fmt::format("switch design power {:.3f} is below the target {:.3f}",
                    result.achieved_power, power_target),
        result.n_per_arm_per_stage, result.achieved_power);
  }
  return result;
}

}  // namespace ordgsd
