#include "ordgsd/report.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // avoid "-0"
  return fmt::format("{:.4g}", x);
}

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  const auto s = fmt::format("{:.{}g}", x, digits);
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

double effect_size(Design design, const CategoryDistribution& control, const EffectSpec& effect,
                   const UtilityScale& utility) {
  if (design != Design::NPO && effect.is_proportional()) return effect.odds_ratios().front();
  return mean_utility_difference(control, effect, utility);
}

ReportRow make_report_row(std::string scenario, double effect_size,
                          const OperatingCharacteristics& oc) {
  return ReportRow{std::move(scenario), round_significant(effect_size),
                   round_significant(oc.pet), round_significant(oc.prn),
                   round_significant(oc.avg_n_per_arm)};
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::string out(kReportHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", csv_field(r.scenario), format_number(r.effect_size),
                       format_number(r.pet), format_number(r.prn), format_number(r.avg_n));
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw InvalidArgument("unterminated quote in CSV line");
  return fields;
}

double parse_field(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument(fmt::format("'{}' is not a number", s));
  }
  return v;
}

}  // namespace

std::vector<ReportRow> rows_from_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  bool header = true;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kReportHeader) throw InvalidArgument("unexpected CSV header");
      header = false;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw InvalidArgument("expected 5 CSV fields");
    rows.push_back(ReportRow{f[0], parse_field(f[1]), parse_field(f[2]), parse_field(f[3]),
                             parse_field(f[4])});
  }
  if (header) throw InvalidArgument("missing CSV header");
  return rows;
}

std::string format_table(const std::vector<ReportRow>& rows) {
  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, r.scenario.size());
  std::string out = fmt::format("{:<{}}  {:>11}  {:>8}  {:>8}  {:>12}\n", "Scenario", width,
                                "Effect Size", "PET (%)", "PRN (%)", "Avg n/arm");
  for (const auto& r : rows) {
    out += fmt::format("{:<{}}  {:>11}  {:>8}  {:>8}  {:>12}\n", r.scenario, width,
                       format_number(r.effect_size), format_number(r.pet), format_number(r.prn),
                       format_number(r.avg_n));
  }
  return out;
}

nlohmann::json scenario_json(const std::string& label, Design design,
                             const CategoryDistribution& control, const EffectSpec& effect,
                             const UtilityScale& utility, const OperatingCharacteristics& oc) {
  nlohmann::json j;
  const auto ors = effect.odds_ratios();
  j["scenario"] = label;
  j["odds_ratios"] = std::vector<double>(ors.begin(), ors.end());
  j["proportional"] = effect.is_proportional();
  j["mean_utility_difference"] = mean_utility_difference(control, effect, utility);
  j["effect_size"] = effect_size(design, control, effect, utility);
  j["effect_size_kind"] =
      design != Design::NPO && effect.is_proportional() ? "odds_ratio" : "utility_difference";
  j["pet"] = oc.pet;
  j["prn"] = oc.prn;
  j["avg_n_per_arm"] = oc.avg_n_per_arm;
  j["avg_n_total"] = 2.0 * oc.avg_n_per_arm;
  j["n_trials"] = oc.n_trials;
  j["n_valid"] = oc.outcomes.size();
  j["n_invalid"] = oc.n_invalid;
  j["n_reruns"] = oc.n_reruns;

  std::string decisions;
  std::string models;
  std::size_t futile = 0, superior = 0, neither = 0;
  for (const auto& o : oc.outcomes) {
    switch (o.decision) {
      case Decision::StoppedFutile:
        decisions += 'F';
        ++futile;
        break;
      case Decision::Superior:
        decisions += 'S';
        ++superior;
        break;
      case Decision::NotEffective:
        decisions += 'N';
        ++neither;
        break;
    }
    if (o.chosen_model) models += *o.chosen_model == Model::PO ? 'P' : 'N';
  }
  j["trials"] = {{"stopped_futile", futile},
                 {"superior", superior},
                 {"not_effective", neither},
                 {"decisions", decisions}};
  if (design == Design::Switch) {
    j["npo_selection_pct"] = oc.npo_selection_pct;
    j["trials"]["chosen_models"] = models;
  }
  return j;
}

nlohmann::json calibration_json(const CalibrationResult& result) {
  nlohmann::json j;
  j["c_f"] = result.c_f;
  j["c_s"] = result.c_s;
  j["achieved_type1"] = result.achieved_type1;
  if (result.achieved_power) j["achieved_power"] = *result.achieved_power;
  if (result.confirmed_type1) j["confirmed_type1"] = *result.confirmed_type1;
  j["grid"] = nlohmann::json::array();
  for (const auto& g : result.grid) {
    nlohmann::json p = {{"c_f", g.c_f}, {"c_s", g.c_s}, {"type1", g.type1}};
    if (g.power) p["power"] = *g.power;
    j["grid"].push_back(std::move(p));
  }
  return j;
}

nlohmann::json sample_size_json(const SampleSizeResult& result) {
  nlohmann::json j;
  j["n_per_arm_per_stage"] = result.n_per_arm_per_stage;
  j["achieved_power"] = result.achieved_power;
  j["c_f"] = result.c_f;
  j["c_s"] = result.c_s;
  j["type1"] = result.type1;
  if (result.confirmed_type1) j["confirmed_type1"] = *result.confirmed_type1;
  if (result.switch_sizes) {
    const auto& s = *result.switch_sizes;
    j["switch_sizes"] = {{"po_stage1", s.po_stage1},
                         {"po_stage2", s.po_stage2},
                         {"npo_stage1", s.npo_stage1},
                         {"npo_stage2", s.npo_stage2}};
  }
  j["evaluated"] = nlohmann::json::array();
  for (const auto& p : result.evaluated) {
    j["evaluated"].push_back({{"design", std::string(to_string(p.design))},
                              {"n", p.n},
                              {"feasible", p.feasible},
                              {"c_f", p.c_f},
                              {"c_s", p.c_s},
                              {"type1", p.type1},
                              {"power", p.power}});
  }
  return j;
}

std::string sample_size_csv(const SampleSizeResult& result) {
  std::string out =
      "Design,Sample Size,Futility Cutoff,Superiority Cutoff,Type I Error (%),Power (%)\n";
  for (const auto& p : result.evaluated) {
    if (!p.feasible) {
      out += fmt::format("{},{},,,,\n", to_string(p.design), p.n);
      continue;
    }
    out += fmt::format("{},{},{},{},{},{}\n", to_string(p.design), p.n, format_number(p.c_f), format_number(p.c_s),
                       format_number(100.0 * p.type1), format_number(100.0 * p.power));
  }
  return out;
}

}  // namespace ordgsd
