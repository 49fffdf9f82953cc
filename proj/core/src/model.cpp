#include "ordgsd/model.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared by both models so that a constant NPO shift reproduces the PO
// value bit for bit.
template <typename ShiftAt>
double arm_log_likelihood(const Counts& counts, double mu, std::span<const double> gamma,
                          ShiftAt shift_at) {
  const std::size_t levels = counts.size();
  double total = 0.0;
  double lower = -kInf;
  for (std::size_t c = 0; c < levels; ++c) {
    const double upper = c + 1 < levels ? gamma[c] - mu - shift_at(c) : kInf;
    const double p = logistic_mass(lower, upper);
    if (!(p > 0.0)) return -kInf;
    if (counts[c] != 0) total += static_cast<double>(counts[c]) * std::log(p);
    lower = upper;
  }
  return total;
}

void check_dimensions(const TwoArmData& data, std::span<const double> gamma) {
  if (gamma.size() + 1 != data.levels()) {
    throw DimensionMismatch(fmt::format("{} cutpoints for {} levels", gamma.size(), data.levels()));
  }
}

}  // namespace

std::string_view to_string(Model m) noexcept { return m == Model::PO ? "PO" : "NPO"; }

std::int64_t ArmData::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

TwoArmData TwoArmData::from_counts(Counts control, Counts treatment) {
  if (control.size() != treatment.size()) {
    throw DimensionMismatch(fmt::format("control has {} levels, treatment has {}", control.size(),
                                        treatment.size()));
  }
  if (control.size() < kMinLevels) throw InvalidArgument("data needs at least 3 levels");
  for (const auto* counts : {&control, &treatment}) {
    for (auto n : *counts) {
      if (n < 0) throw InvalidArgument("negative count");
    }
  }
  TwoArmData out{ArmData{Arm::Control, std::move(control)},
                 ArmData{Arm::Treatment, std::move(treatment)}};
  if (out.control.total() < 1 || out.treatment.total() < 1) {
    throw InvalidArgument("each arm needs at least one observation");
  }
  return out;
}

TwoArmData TwoArmData::pooled_with(const TwoArmData& more) const {
  if (more.levels() != levels()) throw DimensionMismatch("pooling data with different levels");
  TwoArmData out = *this;
  for (std::size_t c = 0; c < levels(); ++c) {
    out.control.counts[c] += more.control.counts[c];
    out.treatment.counts[c] += more.treatment.counts[c];
  }
  return out;
}

double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logistic_mass(double a, double b) noexcept {
  // Subtract upper tails when both ends sit in the right half.
  if (a > 0.0) return logistic(-a) - logistic(-b);
  return logistic(b) - logistic(a);
}

std::vector<double> category_probs(double mu, std::span<const double> gamma,
                                   std::span<const double> shifts) {
  const std::size_t levels = gamma.size() + 1;
  std::vector<double> p(levels);
  double lower = -kInf;
  for (std::size_t c = 0; c < levels; ++c) {
    const double upper =
        c + 1 < levels ? gamma[c] - mu - (shifts.empty() ? 0.0 : shifts[c]) : kInf;
    p[c] = logistic_mass(lower, upper);
    lower = upper;
  }
  return p;
}

double log_likelihood_po(const TwoArmData& data, double mu, std::span<const double> gamma,
                         double delta) {
  check_dimensions(data, gamma);
  const double ctr =
      arm_log_likelihood(data.control.counts, mu, gamma, [](std::size_t) { return 0.0; });
  if (ctr == -kInf) return ctr;
  return ctr + arm_log_likelihood(data.treatment.counts, mu, gamma,
                                  [delta](std::size_t) { return delta; });
}

double log_likelihood_npo(const TwoArmData& data, double mu, std::span<const double> gamma,
                          std::span<const double> delta) {
  check_dimensions(data, gamma);
  if (delta.size() != gamma.size()) {
    throw DimensionMismatch(fmt::format("{} shifts for {} cutpoints", delta.size(), gamma.size()));
  }
  const double ctr =
      arm_log_likelihood(data.control.counts, mu, gamma, [](std::size_t) { return 0.0; });
  if (ctr == -kInf) return ctr;
  return ctr + arm_log_likelihood(data.treatment.counts, mu, gamma,
                                  [delta](std::size_t c) { return delta[c]; });
}

}  // namespace ordgsd
