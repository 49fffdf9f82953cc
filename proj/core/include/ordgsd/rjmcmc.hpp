#pragma once

// PO/NPO model selection by palette post-processing of two fitted chains.
//
// The palette psi has one entry per category boundary (K = C - 1). The NPO
// shifts are psi itself; the PO model reads psi as (delta, u) with
//   delta = mean(psi),  u_c = mean(psi) - psi_{c+1},  c = 1..K-1,
// whose inverse is psi = (delta + sum(u), delta - u_1, ..., delta - u_{K-1}).
// u is a supplemental vector with a Normal(0, v) pseudo-prior.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ordgsd/model.hpp"
#include "ordgsd/random.hpp"
#include "ordgsd/sampler.hpp"

namespace ordgsd {

struct Palette {
  std::vector<double> psi;
};

struct PoCoordinates {
  double delta = 0.0;
  std::vector<double> u;  ///< K - 1 supplemental entries
};

std::vector<double> g1(const Palette& palette);
PoCoordinates g2(const Palette& palette);
Palette g2_inverse(double delta, std::span<const double> u);

/// |det d g_k / d psi|: 1 for NPO, 1 / (C - 1) for PO.
double jacobian_magnitude(Model model, std::size_t levels);

/// log [psi | M_k] = log f_k(g_k(psi)) + log |J_k|.
double palette_log_prior(const Palette& palette, Model model, const PriorSpec& priors,
                         double pseudo_prior_var);

struct ModelPriors {
  double po = 0.5;
  double npo = 0.5;
};

struct RjmcmcConfig {
  std::size_t n_sweeps = 2000;
  double pseudo_prior_var = 1.0;
  ModelPriors model_priors{};

  void validate() const;
};

struct ModelChoice {
  Model selected = Model::PO;
  double posterior_prob_npo = 0.0;  ///< NPO visits / sweeps
  std::size_t visits_po = 0;
  std::size_t visits_npo = 0;
};

/// Two-step sampler over (psi, M). Step 1 sets psi from the current model's
/// chain (cycling through retained draws; PO draws are padded with u drawn
/// from the pseudo-prior). Step 2 samples M from its full conditional using
/// the likelihood at the mapped shifts, with mu and cutpoints carried from
/// the originating draw. Ties in visit frequency select NPO.
ModelChoice select_model(const PosteriorDraws& draws_po, const PosteriorDraws& draws_npo,
                         const TwoArmData& data, const PriorSpec& priors,
                         const RjmcmcConfig& cfg, Rng& rng);

}  // namespace ordgsd
