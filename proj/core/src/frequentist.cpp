#include "ordgsd/frequentist.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxNewtonIterations = 100;
constexpr double kGradientTolerance = 1e-8;

struct LocalFit {
  double loglik;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

double density(double x) {
  if (std::isinf(x)) return 0.0;
  const double f = logistic(x);
  return f * (1.0 - f);
}

double density_slope(double x) {
  if (std::isinf(x)) return 0.0;
  const double f = logistic(x);
  return f * (1.0 - f) * (1.0 - 2.0 * f);
}

bool ordered(const Eigen::VectorXd& x, std::size_t k) {
  for (std::size_t c = 1; c < k; ++c) {
    if (!(x[c] > x[c - 1])) return false;
  }
  return true;
}

// Log-likelihood with derivatives in x = (gamma_1..gamma_K, delta), mu = 0.
LocalFit evaluate(const TwoArmData& data, const Eigen::VectorXd& x, bool derivatives) {
  const std::size_t levels = data.levels();
  const std::size_t k = levels - 1;
  const Eigen::Index dim = static_cast<Eigen::Index>(k + 1);
  LocalFit out{0.0, Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim)};
  Eigen::VectorXd da(dim), db(dim), dp(dim);

  for (const ArmData* arm : {&data.control, &data.treatment}) {
    const bool treated = arm->arm == Arm::Treatment;
    const double shift = treated ? x[dim - 1] : 0.0;
    for (std::size_t c = 0; c < levels; ++c) {
      const auto n = static_cast<double>(arm->counts[c]);
      const double a = c == 0 ? -kInf : x[static_cast<Eigen::Index>(c) - 1] - shift;
      const double b = c + 1 < levels ? x[static_cast<Eigen::Index>(c)] - shift : kInf;
      const double p = logistic_mass(a, b);
      if (n == 0.0) continue;
      if (!(p > 0.0)) {
        out.loglik = -kInf;
        return out;
      }
      out.loglik += n * std::log(p);
      if (!derivatives) continue;

      da.setZero();
      db.setZero();
      if (c > 0) da[static_cast<Eigen::Index>(c) - 1] = 1.0;
      if (c + 1 < levels) db[static_cast<Eigen::Index>(c)] = 1.0;
      if (treated) {
        if (c > 0) da[dim - 1] = -1.0;
        if (c + 1 < levels) db[dim - 1] = -1.0;
      }
      const double fa = density(a);
      const double fb = density(b);
      dp = fb * db - fa * da;
      out.grad += n * dp / p;
      out.hess += n * ((density_slope(b) * db * db.transpose() -
                        density_slope(a) * da * da.transpose()) /
                           p -
                       dp * dp.transpose() / (p * p));
    }
  }
  return out;
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

TwoArmData merge_empty_categories(const TwoArmData& data) {
  // Folding an empty category into a neighbour adds zero to it, so merging
  // reduces to dropping the level.
  TwoArmData out{ArmData{Arm::Control, {}}, ArmData{Arm::Treatment, {}}};
  for (std::size_t c = 0; c < data.levels(); ++c) {
    if (data.control.counts[c] == 0 && data.treatment.counts[c] == 0) continue;
    out.control.counts.push_back(data.control.counts[c]);
    out.treatment.counts.push_back(data.treatment.counts[c]);
  }
  return out;
}

PoMaximumLikelihood fit_po_mle(const TwoArmData& raw) {
  const TwoArmData data = merge_empty_categories(raw);
  const std::size_t levels = data.levels();
  if (levels < 2) throw FitFailure("fewer than two non-empty categories");
  const std::size_t k = levels - 1;
  const Eigen::Index dim = static_cast<Eigen::Index>(k + 1);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  {
    const double n = static_cast<double>(data.control.total() + data.treatment.total());
    double cum = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      cum += static_cast<double>(data.control.counts[c] + data.treatment.counts[c]) + 0.5;
      const double q = cum / (n + 0.5 * static_cast<double>(levels));
      x[static_cast<Eigen::Index>(c)] = std::log(q / (1.0 - q));
    }
  }

  LocalFit cur = evaluate(data, x, true);
  int iter = 0;
  bool converged = false;
  for (; iter < kMaxNewtonIterations; ++iter) {
    if (cur.grad.lpNorm<Eigen::Infinity>() < kGradientTolerance) {
      converged = true;
      break;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(-cur.hess);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) break;
    const Eigen::VectorXd step = ldlt.solve(cur.grad);
    double scale = 1.0;
    bool moved = false;
    for (int h = 0; h < 40; ++h, scale *= 0.5) {
      const Eigen::VectorXd trial = x + scale * step;
      if (!ordered(trial, k)) continue;
      const LocalFit next = evaluate(data, trial, false);
      if (next.loglik >= cur.loglik - 1e-12) {
        x = trial;
        cur = evaluate(data, x, true);
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (std::abs(x[dim - 1]) > 30.0) break;
  }
  if (!converged) {
    throw FitFailure(fmt::format("PO maximum likelihood did not converge ({} iterations)", iter));
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(-cur.hess);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw FitFailure("observed information is not positive definite");
  }
  const Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(dim, dim));
  const double var = cov(dim - 1, dim - 1);
  if (!(var > 0.0) || !std::isfinite(var)) throw FitFailure("non-positive variance for the shift");

  PoMaximumLikelihood out;
  out.delta = x[dim - 1];
  out.std_error = std::sqrt(var);
  out.cutpoints.assign(x.data(), x.data() + k);
  out.merged_levels = levels;
  out.iterations = iter;
  return out;
}

double frequentist_prob_effective(const TwoArmData& data, Model model,
                                  const std::optional<UtilityScale>& scale, Rng& rng,
                                  std::size_t resamples) {
  const auto levels = static_cast<std::int64_t>(data.levels());
  if (data.control.total() < levels || data.treatment.total() < levels) {
    throw InvalidArgument("frequentist criterion needs at least as many patients per arm as levels");
  }
  if (model == Model::PO) {
    const auto mle = fit_po_mle(data);
    return standard_normal_cdf(-mle.delta / mle.std_error);
  }

  if (!scale) throw InvalidArgument("NPO criterion needs a utility scale");
  if (scale->levels() != data.levels()) {
    throw DimensionMismatch("utility scale and data have different numbers of levels");
  }
  auto proportions = [](const ArmData& arm) {
    std::vector<double> p(arm.counts.size());
    const double n = static_cast<double>(arm.total());
    double used = 0.0;
    for (std::size_t c = 0; c + 1 < p.size(); ++c) {
      p[c] = static_cast<double>(arm.counts[c]) / n;
      used += p[c];
    }
    p.back() = std::max(0.0, 1.0 - used);
    return CategoryDistribution(std::move(p));
  };
  const auto ctr = proportions(data.control);
  const auto trt = proportions(data.treatment);
  const auto n_ctr = data.control.total();
  const auto n_trt = data.treatment.total();

  double score = 0.0;
  auto resampled_utility = [&](const CategoryDistribution& dist, std::int64_t n) {
    const auto counts = sample_counts(dist, n, rng);
    double u = 0.0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      u += scale->points()[c] * static_cast<double>(counts[c]);
    }
    return u / static_cast<double>(n);
  };
  for (std::size_t b = 0; b < resamples; ++b) {
    const double u_ctr = resampled_utility(ctr, n_ctr);
    const double u_trt = resampled_utility(trt, n_trt);
    if (u_trt > u_ctr) {
      score += 1.0;
    } else if (u_trt == u_ctr) {
      score += 0.5;
    }
  }
  return score / static_cast<double>(resamples);
}

}  // namespace ordgsd
