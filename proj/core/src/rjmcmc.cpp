#include "ordgsd/rjmcmc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_normal(double x, double mean, double var) {
  const double z = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * var) + z * z / var);
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> g1(const Palette& palette) { return palette.psi; }

PoCoordinates g2(const Palette& palette) {
  if (palette.psi.size() < 2) throw InvalidArgument("palette needs at least 2 entries");
  PoCoordinates out;
  out.delta = mean_of(palette.psi);
  out.u.resize(palette.psi.size() - 1);
  for (std::size_t c = 0; c < out.u.size(); ++c) out.u[c] = out.delta - palette.psi[c + 1];
  return out;
}

Palette g2_inverse(double delta, std::span<const double> u) {
  Palette out;
  out.psi.resize(u.size() + 1);
  out.psi[0] = delta + std::accumulate(u.begin(), u.end(), 0.0);
  for (std::size_t c = 0; c < u.size(); ++c) out.psi[c + 1] = delta - u[c];
  return out;
}

double jacobian_magnitude(Model model, std::size_t levels) {
  if (levels < kMinLevels) throw InvalidArgument("jacobian needs at least 3 levels");
  return model == Model::NPO ? 1.0 : 1.0 / static_cast<double>(levels - 1);
}

double palette_log_prior(const Palette& palette, Model model, const PriorSpec& priors,
                         double pseudo_prior_var) {
  if (!(pseudo_prior_var > 0.0)) throw InvalidArgument("pseudo-prior variance must be positive");
  const std::size_t k = palette.psi.size();
  if (priors.delta_means.size() != k || priors.delta_vars.size() != k) {
    throw DimensionMismatch("palette and shift prior lengths differ");
  }
  if (model == Model::NPO) {
    double lp = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      lp += log_normal(palette.psi[c], priors.delta_means[c], priors.delta_vars[c]);
    }
    return lp;
  }
  const auto coords = g2(palette);
  double lp = log_normal(coords.delta, priors.po_delta_mean(), priors.po_delta_var());
  for (double u : coords.u) lp += log_normal(u, 0.0, pseudo_prior_var);
  return lp + std::log(jacobian_magnitude(Model::PO, k + 1));
}

void RjmcmcConfig::validate() const {
  if (n_sweeps < 1) throw InvalidArgument("model selection needs at least one sweep");
  if (!(pseudo_prior_var > 0.0)) throw InvalidArgument("pseudo-prior variance must be positive");
  if (model_priors.po < 0.0 || model_priors.npo < 0.0 ||
      std::abs(model_priors.po + model_priors.npo - 1.0) > 1e-9) {
    throw InvalidArgument("model prior probabilities must be non-negative and sum to 1");
  }
}

ModelChoice select_model(const PosteriorDraws& draws_po, const PosteriorDraws& draws_npo,
                         const TwoArmData& data, const PriorSpec& priors,
                         const RjmcmcConfig& cfg, Rng& rng) {
  cfg.validate();
  if (draws_po.model() != Model::PO || draws_npo.model() != Model::NPO) {
    throw WrongModel("select_model needs one PO and one NPO chain");
  }
  if (draws_po.size() == 0 || draws_npo.size() == 0) {
    throw InsufficientDraws("model selection needs retained draws from both chains");
  }
  const std::size_t levels = data.levels();
  if (draws_po.levels() != levels || draws_npo.levels() != levels) {
    throw DimensionMismatch("chains and data have different numbers of levels");
  }
  const std::size_t k = levels - 1;
  const double log_prior_po = cfg.model_priors.po > 0.0 ? std::log(cfg.model_priors.po) : kNegInf;
  const double log_prior_npo =
      cfg.model_priors.npo > 0.0 ? std::log(cfg.model_priors.npo) : kNegInf;

  std::normal_distribution<double> pseudo(0.0, std::sqrt(cfg.pseudo_prior_var));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Model current = unif(rng) < cfg.model_priors.npo ? Model::NPO : Model::PO;
  if (cfg.model_priors.npo == 0.0) current = Model::PO;
  if (cfg.model_priors.po == 0.0) current = Model::NPO;

  std::size_t cursor_po = 0;
  std::size_t cursor_npo = 0;
  std::vector<double> u(k - 1);
  ModelChoice out;

  for (std::size_t sweep = 0; sweep < cfg.n_sweeps; ++sweep) {
    Palette palette;
    double mu;
    std::span<const double> gamma;
    if (current == Model::NPO) {
      const std::size_t i = cursor_npo++ % draws_npo.size();
      const auto d = draws_npo.deltas(i);
      palette.psi.assign(d.begin(), d.end());
      mu = draws_npo.mu(i);
      gamma = draws_npo.gamma(i);
    } else {
      const std::size_t i = cursor_po++ % draws_po.size();
      for (double& v : u) v = pseudo(rng);
      palette = g2_inverse(draws_po.delta(i), u);
      mu = draws_po.mu(i);
      gamma = draws_po.gamma(i);
    }

    const double ll_npo = log_likelihood_npo(data, mu, gamma, g1(palette));
    const double ll_po = log_likelihood_po(data, mu, gamma, g2(palette).delta);
    const double w_npo = ll_npo == kNegInf || log_prior_npo == kNegInf
                             ? kNegInf
                             : ll_npo + palette_log_prior(palette, Model::NPO, priors,
                                                          cfg.pseudo_prior_var) +
                                   log_prior_npo;
    const double w_po = log_prior_po == kNegInf
                            ? kNegInf
                            : ll_po + palette_log_prior(palette, Model::PO, priors,
                                                        cfg.pseudo_prior_var) +
                                  log_prior_po;

    if (w_npo != kNegInf || w_po != kNegInf) {
      const double top = std::max(w_npo, w_po);
      const double e_npo = std::exp(w_npo - top);
      const double e_po = std::exp(w_po - top);
      const double p_npo = e_npo / (e_npo + e_po);
      assert(p_npo >= 0.0 && p_npo <= 1.0);
      current = unif(rng) < p_npo ? Model::NPO : Model::PO;
    }
    if (current == Model::NPO) {
      ++out.visits_npo;
    } else {
      ++out.visits_po;
    }
  }

  out.posterior_prob_npo =
      static_cast<double>(out.visits_npo) / static_cast<double>(cfg.n_sweeps);
  out.selected = out.visits_npo >= out.visits_po ? Model::NPO : Model::PO;
  return out;
}

}  // namespace ordgsd
