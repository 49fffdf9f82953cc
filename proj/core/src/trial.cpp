#include "ordgsd/trial.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "ordgsd/criteria.hpp"
#include "ordgsd/errors.hpp"
#include "ordgsd/frequentist.hpp"

namespace ordgsd {

std::string_view to_string(Design d) noexcept {
  switch (d) {
    case Design::PO:
      return "po";
    case Design::NPO:
      return "npo";
    case Design::Switch:
      return "switch";
  }
  return "?";
}

std::string_view to_string(Method m) noexcept {
  return m == Method::Bayesian ? "bayesian" : "frequentist";
}

std::string_view to_string(Decision d) noexcept {
  switch (d) {
    case Decision::StoppedFutile:
      return "stopped_futile";
    case Decision::Superior:
      return "superior";
    case Decision::NotEffective:
      return "not_effective";
  }
  return "?";
}

std::int64_t DesignConfig::stage1_size() const noexcept {
  return design == Design::Switch ? switch_sizes.stage1() : n_stage;
}

std::int64_t DesignConfig::max_per_arm() const noexcept {
  if (design != Design::Switch) return 2 * n_stage;
  return switch_sizes.stage1() + std::max(switch_sizes.po_stage2, switch_sizes.npo_stage2);
}

void DesignConfig::validate() const {
  if (!(c_f >= 0.0 && c_f <= 1.0)) throw InvalidArgument("futility cutoff must lie in [0,1]");
  if (!(c_s >= 0.0)) throw InvalidArgument("superiority cutoff must be non-negative");
  if (!(c_f < c_s)) throw InvalidArgument("futility cutoff must be below superiority cutoff");
  if (design == Design::Switch) {
    const auto& s = switch_sizes;
    if (s.po_stage1 < 1 || s.po_stage2 < 1 || s.npo_stage1 < 1 || s.npo_stage2 < 1) {
      throw InvalidArgument("switch stage sizes must be at least 1");
    }
  } else if (n_stage < 1) {
    throw InvalidArgument("stage size must be at least 1");
  }
  priors.validate(levels());
  mcmc.validate();
  rjmcmc.validate();
  if (threads < 1) throw InvalidArgument("threads must be at least 1");
}

namespace {


TwoArmData draw_stage(const CategoryDistribution& control, const CategoryDistribution& treated,
                      std::int64_t n, Rng& rng) {
  auto ctr = sample_counts(control, n, rng);
  auto trt = sample_counts(treated, n, rng);
  return TwoArmData::from_counts(std::move(ctr), std::move(trt));
}

double criterion_from_draws(const PosteriorDraws& draws, const UtilityScale& scale) {
  return draws.model() == Model::PO ? prob_effective_po(draws) : prob_effective_npo(draws, scale);
}

double criterion(const DesignConfig& cfg, Model model, const TwoArmData& data, Rng& rng) {
  if (cfg.method == Method::Frequentist) {
    return frequentist_prob_effective(data, model, cfg.utility, rng);
  }
  return criterion_from_draws(fit(data, model, cfg.priors, cfg.mcmc, rng), cfg.utility);
}

// Runs one trial. With `complete` false the trial stops at the interim
// analysis when the criterion falls below c_f.
TrialStatistics run_trial(const DesignConfig& cfg, const CategoryDistribution& control,
                          const EffectSpec& effect, Rng& rng, bool complete, bool& stopped) {
  if (control.levels() != cfg.levels()) {
    throw DimensionMismatch(fmt::format("control has {} levels, design expects {}",
                                        control.levels(), cfg.levels()));
  }
  const auto treated = apply_odds_ratios(control, effect);
  TrialStatistics stats;
  stopped = false;
  try {
    const std::int64_t n1 = cfg.stage1_size();
    const TwoArmData stage1 = draw_stage(control, treated, n1, rng);
    stats.stage1_per_arm = n1;

    Model model = cfg.design == Design::NPO ? Model::NPO : Model::PO;
    if (cfg.design == Design::Switch) {
      const auto po = fit(stage1, Model::PO, cfg.priors, cfg.mcmc, rng);
      const auto npo = fit(stage1, Model::NPO, cfg.priors, cfg.mcmc, rng);
      const auto choice = select_model(po, npo, stage1, cfg.priors, cfg.rjmcmc, rng);
      model = choice.selected;
      stats.chosen_model = model;
      stats.posterior_prob_npo = choice.posterior_prob_npo;
      if (cfg.method == Method::Bayesian) {
        stats.interim = criterion_from_draws(model == Model::PO ? po : npo, cfg.utility);
      } else {
        stats.interim = criterion(cfg, model, stage1, rng);
      }
      stats.stage2_per_arm = cfg.switch_sizes.stage2(model);
    } else {
      stats.interim = criterion(cfg, model, stage1, rng);
      stats.stage2_per_arm = cfg.n_stage;
    }

    if (!complete && stats.interim < cfg.c_f) {
      stopped = true;
      return stats;
    }
    const TwoArmData stage2 = draw_stage(control, treated, stats.stage2_per_arm, rng);
    stats.final_stat = criterion(cfg, model, stage1.pooled_with(stage2), rng);
  } catch (const EstimationFailure& e) {
    throw TrialInvalid(e.what());
  }
  return stats;
}

}  // namespace

TrialOutcome decide(const TrialStatistics& stats, double c_f, double c_s) {
  TrialOutcome out;
  out.interim_stat = stats.interim;
  out.chosen_model = stats.chosen_model;
  out.posterior_prob_npo = stats.posterior_prob_npo;
  if (stats.interim < c_f) {
    out.decision = Decision::StoppedFutile;
    out.n_enrolled_per_arm = stats.stage1_per_arm;
    return out;
  }
  out.final_stat = stats.final_stat;
  out.n_enrolled_per_arm = stats.stage1_per_arm + stats.stage2_per_arm;
  out.decision = stats.final_stat > c_s ? Decision::Superior : Decision::NotEffective;
  return out;
}

TrialOutcome simulate_trial(const DesignConfig& cfg, const CategoryDistribution& control,
                            const EffectSpec& effect, Rng& rng) {
  bool stopped = false;
  const auto stats = run_trial(cfg, control, effect, rng, false, stopped);
  return decide(stats, cfg.c_f, cfg.c_s);
}

TrialStatistics simulate_trial_statistics(const DesignConfig& cfg,
                                          const CategoryDistribution& control,
                                          const EffectSpec& effect, Rng& rng) {
  bool stopped = false;
  return run_trial(cfg, control, effect, rng, true, stopped);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

OperatingCharacteristics operating_characteristics(const DesignConfig& cfg,
                                                   const CategoryDistribution& control,
                                                   const EffectSpec& effect,
                                                   std::size_t n_trials) {
  cfg.validate();
  if (n_trials < 1) throw InvalidArgument("n_trials must be at least 1");

  std::vector<std::optional<TrialOutcome>> results(n_trials);
  std::vector<int> attempts(n_trials, 0);
  parallel_for(n_trials, cfg.threads, [&](std::size_t i) {
    for (int attempt = 0; attempt < kMaxTrialAttempts; ++attempt) {
      attempts[i] = attempt + 1;
      Rng rng = derive_stream(cfg.seed, i, static_cast<std::uint64_t>(attempt));
      try {
        results[i] = simulate_trial(cfg, control, effect, rng);
        return;
      } catch (const TrialInvalid&) {
      }
    }
  });

  OperatingCharacteristics oc;
  oc.n_trials = n_trials;
  std::size_t futile = 0, superior = 0, npo = 0;
  double enrolled = 0.0;
  for (std::size_t i = 0; i < n_trials; ++i) {
    oc.n_reruns += static_cast<std::size_t>(attempts[i] - 1);
    if (!results[i]) {
      ++oc.n_invalid;
      continue;
    }
    const auto& t = *results[i];
    futile += t.decision == Decision::StoppedFutile ? 1 : 0;
    superior += t.decision == Decision::Superior ? 1 : 0;
    npo += t.chosen_model == Model::NPO ? 1 : 0;
    enrolled += static_cast<double>(t.n_enrolled_per_arm);
    oc.outcomes.push_back(t);
  }
  const auto valid = static_cast<double>(oc.outcomes.size());
  if (valid > 0) {
    oc.pet = 100.0 * static_cast<double>(futile) / valid;
    oc.prn = 100.0 * static_cast<double>(superior) / valid;
    oc.avg_n_per_arm = enrolled / valid;
    oc.npo_selection_pct = 100.0 * static_cast<double>(npo) / valid;
  }
  return oc;
}

OperatingCharacteristics operating_characteristics(const DesignConfig& cfg,
                                                   const Scenario& scenario,
                                                   std::size_t n_trials) {
  return operating_characteristics(cfg, scenario.control, scenario.effect, n_trials);
}

std::vector<TrialStatistics> simulate_statistics(const DesignConfig& cfg,
                                                 const CategoryDistribution& control,
                                                 const EffectSpec& effect,
                                                 std::size_t n_trials) {
  cfg.validate();
  std::vector<TrialStatistics> out(n_trials);
  parallel_for(n_trials, cfg.threads, [&](std::size_t i) {
    for (int attempt = 0; attempt < kMaxTrialAttempts; ++attempt) {
      Rng rng = derive_stream(cfg.seed, i, static_cast<std::uint64_t>(attempt));
      try {
        out[i] = simulate_trial_statistics(cfg, control, effect, rng);
        return;
      } catch (const TrialInvalid&) {
      }
    }
    out[i].valid = false;
  });
  return out;
}

}  // namespace ordgsd
