#pragma once

// Result tables: one row per scenario with effect size, PET, PRN and
// average sample size, as CSV (4 significant digits), a fixed-width text
// table, and full-precision JSON.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordgsd/calibration.hpp"
#include "ordgsd/trial.hpp"

namespace ordgsd {

struct ReportRow {
  std::string scenario;
  double effect_size = 0.0;
  double pet = 0.0;
  double prn = 0.0;
  double avg_n = 0.0;

  bool operator==(const ReportRow&) const = default;
};

inline constexpr std::string_view kReportHeader =
    "Scenario,Effect Size,PET (%),PRN (%),Average Sample Size";

/// x rounded to `digits` significant digits, exactly as written to CSV.
double round_significant(double x, int digits = 4);

/// Shortest text for x at 4 significant digits.
std::string format_number(double x);

/// The odds ratio for proportional effects outside the NPO design, the
/// mean-utility difference otherwise.
double effect_size(Design design, const CategoryDistribution& control, const EffectSpec& effect,
                   const UtilityScale& utility);

/// Row with every number already rounded, so it survives a CSV round trip.
ReportRow make_report_row(std::string scenario, double effect_size,
                          const OperatingCharacteristics& oc);

std::string csv_field(std::string_view s);
std::string rows_to_csv(const std::vector<ReportRow>& rows);

/// Throws InvalidArgument on a malformed table.
std::vector<ReportRow> rows_from_csv(std::string_view text);

std::string format_table(const std::vector<ReportRow>& rows);

/// Full-precision summary of one scenario, including a compact per-trial
/// log: one character per valid trial (F futile, S superior, N not
/// effective) and, for the switch design, the chosen model per trial.
nlohmann::json scenario_json(const std::string& label, Design design,
                             const CategoryDistribution& control, const EffectSpec& effect,
                             const UtilityScale& utility, const OperatingCharacteristics& oc);

nlohmann::json calibration_json(const CalibrationResult& result);
nlohmann::json sample_size_json(const SampleSizeResult& result);

/// One line per evaluated n.
std::string sample_size_csv(const SampleSizeResult& result);

}  // namespace ordgsd
