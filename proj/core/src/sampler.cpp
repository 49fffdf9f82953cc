#include "ordgsd/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kAdaptBatch = 50;
constexpr double kTargetAcceptance = 0.35;

double log_normal(double x, double mean, double var) {
  const double z = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * var) + z * z / var);
}

enum class MoveKind { Mu, Shift, Gamma, Delta };

struct Move {
  MoveKind kind;
  std::size_t index;  // parameter slot for Gamma/Delta
  double step;
  std::size_t batch_accepted = 0;
};

std::vector<double> initial_cutpoints(const TwoArmData& data) {
  const std::size_t levels = data.levels();
  const double n = static_cast<double>(data.control.total() + data.treatment.total());
  std::vector<double> gamma(levels - 1);
  double cum = 0.0;
  for (std::size_t c = 0; c + 1 < levels; ++c) {
    cum += static_cast<double>(data.control.counts[c] + data.treatment.counts[c]) + 0.5;
    const double q = cum / (n + 0.5 * static_cast<double>(levels));
    gamma[c] = std::log(q / (1.0 - q));
  }
  return gamma;
}

}  // namespace

PriorSpec PriorSpec::defaults(std::size_t levels, CutpointPriorReading reading) {
  PriorSpec p;
  p.cutpoint_var = reading == CutpointPriorReading::Precision ? 10.0 : 0.1;
  p.delta_means.assign(levels - 1, 0.0);
  p.delta_vars.assign(levels - 1, 10.0);
  return p;
}

double PriorSpec::po_delta_mean() const {
  return std::accumulate(delta_means.begin(), delta_means.end(), 0.0) /
         static_cast<double>(delta_means.size());
}

double PriorSpec::po_delta_var() const {
  return std::accumulate(delta_vars.begin(), delta_vars.end(), 0.0) /
         static_cast<double>(delta_vars.size());
}

void PriorSpec::validate(std::size_t levels) const {
  if (!(mu_var > 0.0)) throw InvalidArgument("mu prior variance must be positive");
  if (!(cutpoint_var > 0.0)) throw InvalidArgument("cutpoint prior variance must be positive");
  if (delta_means.size() != levels - 1 || delta_vars.size() != levels - 1) {
    throw DimensionMismatch(fmt::format("shift prior needs {} entries", levels - 1));
  }
  for (double v : delta_vars) {
    if (!(v > 0.0)) throw InvalidArgument("shift prior variances must be positive");
  }
}

void McmcConfig::validate() const {
  if (n_burn < 1 || n_keep < 1) throw InvalidArgument("n_burn and n_keep must be at least 1");
  if (!(step_mu > 0.0 && step_gamma > 0.0 && step_delta > 0.0)) {
    throw InvalidArgument("MCMC step sizes must be positive");
  }
}

std::size_t parameter_count(Model model, std::size_t levels) noexcept {
  const std::size_t k = levels - 1;
  return 1 + k + (model == Model::PO ? 1 : k);
}

PosteriorDraws::PosteriorDraws(Model model, std::size_t levels, std::vector<double> values,
                               double acceptance_rate)
    : model_(model),
      levels_(levels),
      n_params_(parameter_count(model, levels)),
      values_(std::move(values)),
      acceptance_rate_(acceptance_rate) {
  if (values_.empty() || values_.size() % n_params_ != 0) {
    throw InvalidArgument("posterior draws must hold a positive whole number of rows");
  }
}

std::span<const double> PosteriorDraws::row(std::size_t i) const {
  return std::span<const double>(values_).subspan(i * n_params_, n_params_);
}

double PosteriorDraws::delta(std::size_t i) const {
  if (model_ != Model::PO) throw WrongModel("scalar shift requested from NPO draws");
  return row(i)[n_params_ - 1];
}

std::vector<double> PosteriorDraws::boundary_shifts(std::size_t i) const {
  const auto d = deltas(i);
  if (model_ == Model::PO) return std::vector<double>(boundaries(), d[0]);
  return {d.begin(), d.end()};
}

double log_posterior(const TwoArmData& data, Model model, const PriorSpec& priors,
                     std::span<const double> params, bool fix_mu) {
  const std::size_t k = data.levels() - 1;
  const double mu = params[0];
  const auto gamma = params.subspan(1, k);
  const auto delta = params.subspan(1 + k);
  for (std::size_t c = 1; c < k; ++c) {
    if (!(gamma[c] > gamma[c - 1])) return kNegInf;
  }
  double lp = fix_mu ? 0.0 : log_normal(mu, priors.mu_mean, priors.mu_var);
  for (double g : gamma) lp += log_normal(g, 0.0, priors.cutpoint_var);
  double ll;
  if (model == Model::PO) {
    lp += log_normal(delta[0], priors.po_delta_mean(), priors.po_delta_var());
    ll = log_likelihood_po(data, mu, gamma, delta[0]);
  } else {
    for (std::size_t c = 0; c < k; ++c) {
      lp += log_normal(delta[c], priors.delta_means[c], priors.delta_vars[c]);
    }
    ll = log_likelihood_npo(data, mu, gamma, delta);
  }
  return ll == kNegInf ? kNegInf : ll + lp;
}

PosteriorDraws fit(const TwoArmData& data, Model model, const PriorSpec& priors,
                   const McmcConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::size_t levels = data.levels();
  priors.validate(levels);
  if (data.control.total() < 1 || data.treatment.total() < 1) {
    throw InvalidArgument("both arms need data");
  }
  const std::size_t k = levels - 1;
  const std::size_t n_params = parameter_count(model, levels);
  const std::size_t n_delta = n_params - 1 - k;

  std::vector<double> state(n_params, 0.0);
  const auto gamma0 = initial_cutpoints(data);
  std::copy(gamma0.begin(), gamma0.end(), state.begin() + 1);
  double current = log_posterior(data, model, priors, state, cfg.fix_mu);
  if (!std::isfinite(current)) throw ChainDegenerate("initial state has zero posterior density");

  std::vector<Move> moves;
  if (!cfg.fix_mu) {
    moves.push_back({MoveKind::Mu, 0, cfg.step_mu});
    moves.push_back({MoveKind::Shift, 0, cfg.step_mu});
  }
  for (std::size_t c = 0; c < k; ++c) moves.push_back({MoveKind::Gamma, 1 + c, cfg.step_gamma});
  for (std::size_t c = 0; c < n_delta; ++c) {
    moves.push_back({MoveKind::Delta, 1 + k + c, cfg.step_delta});
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> proposal(n_params);
  std::vector<double> kept;
  kept.reserve(cfg.n_keep * n_params);
  std::size_t kept_accepted = 0;
  std::size_t kept_proposed = 0;

  const std::size_t total_iters = cfg.n_burn + cfg.n_keep;
  for (std::size_t iter = 0; iter < total_iters; ++iter) {
    const bool burning = iter < cfg.n_burn;
    for (auto& mv : moves) {
      proposal = state;
      const double e = mv.step * normal(rng);
      switch (mv.kind) {
        case MoveKind::Mu:
          proposal[0] += e;
          break;
        case MoveKind::Shift:
          for (std::size_t j = 0; j <= k; ++j) proposal[j] += e;
          break;
        case MoveKind::Gamma:
        case MoveKind::Delta:
          proposal[mv.index] += e;
          break;
      }
      const double cand = log_posterior(data, model, priors, proposal, cfg.fix_mu);
      const bool accept = cand != kNegInf && std::log(unif(rng)) < cand - current;
      if (accept) {
        state.swap(proposal);
        current = cand;
        ++mv.batch_accepted;
      }
      if (!burning) {
        ++kept_proposed;
        kept_accepted += accept ? 1 : 0;
      }
    }

    if (burning && cfg.adapt && (iter + 1) % kAdaptBatch == 0) {
      for (auto& mv : moves) {
        const double rate = static_cast<double>(mv.batch_accepted) / kAdaptBatch;
        mv.step = std::clamp(mv.step * std::exp(3.0 * (rate - kTargetAcceptance)), 1e-4, 50.0);
        mv.batch_accepted = 0;
      }
    } else if (burning && (iter + 1) % kAdaptBatch == 0) {
      for (auto& mv : moves) mv.batch_accepted = 0;
    }
    if (!burning) kept.insert(kept.end(), state.begin(), state.end());
  }

  const double rate = kept_proposed > 0
                          ? static_cast<double>(kept_accepted) / static_cast<double>(kept_proposed)
                          : 0.0;
  if (rate < 0.01) {
    throw ChainDegenerate(fmt::format("{} chain acceptance rate {:.4f} below 0.01",
                                      to_string(model), rate));
  }
  return PosteriorDraws(model, levels, std::move(kept), rate);
}

}  // namespace ordgsd
