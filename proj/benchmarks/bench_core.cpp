#include <benchmark/benchmark.h>

#include <vector>

#include "ordgsd/frequentist.hpp"
#include "ordgsd/model.hpp"
#include "ordgsd/ordinal.hpp"
#include "ordgsd/random.hpp"
#include "ordgsd/rjmcmc.hpp"
#include "ordgsd/sampler.hpp"
#include "ordgsd/trial.hpp"

namespace {

using namespace ordgsd;

TwoArmData sample_data(std::int64_t n, double odds_ratio) {
  Rng rng(42);
  const auto control = reference_control();
  const auto treated = apply_odds_ratios(control, EffectSpec::proportional(odds_ratio, 6));
  return TwoArmData::from_counts(sample_counts(control, n, rng), sample_counts(treated, n, rng));
}

void BM_LogLikelihoodNpo(benchmark::State& state) {
  const auto data = sample_data(200, 1.5);
  const std::vector<double> gamma{0.3, 0.5, 1.2, 1.4, 1.9};
  const std::vector<double> delta{-0.4, -0.4, -0.3, -0.4, -0.5};
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood_npo(data, 0.0, gamma, delta));
}
BENCHMARK(BM_LogLikelihoodNpo);

void BM_Fit(benchmark::State& state) {
  const auto model = state.range(0) == 0 ? Model::PO : Model::NPO;
  const auto data = sample_data(state.range(1), 1.5);
  const auto priors = PriorSpec::defaults(6);
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(fit(data, model, priors, McmcConfig{}, rng));
}
BENCHMARK(BM_Fit)->ArgsProduct({{0, 1}, {100, 200}})->Unit(benchmark::kMillisecond);

void BM_SelectModel(benchmark::State& state) {
  const auto data = sample_data(100, 1.5);
  const auto priors = PriorSpec::defaults(6);
  Rng rng(9);
  const auto po = fit(data, Model::PO, priors, McmcConfig{}, rng);
  const auto npo = fit(data, Model::NPO, priors, McmcConfig{}, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_model(po, npo, data, priors, RjmcmcConfig{}, rng));
  }
}
BENCHMARK(BM_SelectModel)->Unit(benchmark::kMillisecond);

void BM_FrequentistCriterion(benchmark::State& state) {
  const auto model = state.range(0) == 0 ? Model::PO : Model::NPO;
  const auto data = sample_data(200, 1.5);
  const auto scale = reference_utility();
  Rng rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frequentist_prob_effective(data, model, scale, rng));
  }
}
BENCHMARK(BM_FrequentistCriterion)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_SimulateTrial(benchmark::State& state) {
  DesignConfig cfg;
  cfg.design = static_cast<Design>(state.range(0));
  cfg.c_s = 0.95;
  cfg.switch_sizes = SwitchSizes{100, 100, 100, 100};
  cfg.method = state.range(1) == 0 ? Method::Bayesian : Method::Frequentist;
  const auto control = reference_control();
  const auto effect = EffectSpec::proportional(1.4, 6);
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = derive_stream(3, i++, 0);
    benchmark::DoNotOptimize(simulate_trial(cfg, control, effect, rng));
  }
}
BENCHMARK(BM_SimulateTrial)
    ->ArgsProduct({{0, 1, 2}, {0, 1}})
    ->ArgNames({"design", "freq"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
