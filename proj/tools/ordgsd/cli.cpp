#include "ordgsd/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ordgsd/calibration.hpp"
#include "ordgsd/config.hpp"
#include "ordgsd/errors.hpp"
#include "ordgsd/report.hpp"
#include "ordgsd/trial.hpp"

namespace ordgsd::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::string_view kVersion = "0.1.0";

struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  std::size_t ntrial = 0;
  double alpha = 0.0;
  double power = 0.0;
  std::string method;
  std::string out;
  unsigned threads = 0;
  bool overwrite = false;
  bool confirm = false;
  bool no_confirm = false;
};

struct Artifacts {
  std::string csv;
  std::string table;
  nlohmann::json results;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
}

Artifacts run_oc(RunConfig cfg) {
  Artifacts a;
  const auto control = cfg.control();
  nlohmann::json calibration;
  if (cfg.calibrate_cutoffs) {
    const CalibrationOptions opts{cfg.alpha, cfg.grid, cfg.n_trials, cfg.confirm_bayesian};
    const auto cal = calibrate_thresholds(cfg.design, control, opts);
    cfg.design.c_f = cal.c_f;
    cfg.design.c_s = cal.c_s;
    calibration = calibration_json(cal);
    a.table = fmt::format("Calibrated cutoffs: futility {}, superiority {} (type I {})\n",
                          format_number(cal.c_f), format_number(cal.c_s),
                          format_number(cal.achieved_type1));
  }
  std::vector<ReportRow> rows;
  a.results = nlohmann::json::array();
  for (const auto& s : cfg.scenarios) {
    const auto oc = operating_characteristics(cfg.design, control, s.effect, cfg.n_trials);
    const double es = effect_size(cfg.design.design, control, s.effect, cfg.design.utility);
    rows.push_back(make_report_row(s.label, es, oc));
    a.results.push_back(
        scenario_json(s.label, cfg.design.design, control, s.effect, cfg.design.utility, oc));
  }
  a.csv = rows_to_csv(rows);
  a.table += format_table(rows);
  if (cfg.calibrate_cutoffs) {
    a.results = nlohmann::json{{"calibration", std::move(calibration)},
                               {"scenarios", std::move(a.results)}};
  }
  return a;
}

Artifacts run_ss(const RunConfig& cfg) {
  const auto control = cfg.control();
  const CalibrationOptions opts{cfg.alpha, cfg.grid, cfg.n_trials, cfg.confirm_bayesian};
  const auto result =
      cfg.design.design == Design::Switch
          ? find_switch_sample_size(cfg.design, *cfg.effect_alt, control, cfg.power, cfg.n_grid,
                                    cfg.npo_n_grid, opts)
          : find_sample_size(cfg.design, *cfg.effect_alt, control, cfg.power, cfg.n_grid, opts);
  Artifacts a;
  a.csv = sample_size_csv(result);
  a.results = sample_size_json(result);
  if (result.switch_sizes) {
    const auto& s = *result.switch_sizes;
    a.table = fmt::format("Sample size per arm: PO stages ({}, {}), NPO stages ({}, {})\n",
                          s.po_stage1, s.po_stage2, s.npo_stage1, s.npo_stage2);
  } else {
    a.table = fmt::format("Sample size per arm per stage: {}\n", result.n_per_arm_per_stage);
  }
  a.table += fmt::format("Cutoffs: futility {}, superiority {}\n", format_number(result.c_f),
                         format_number(result.c_s));
  a.table += fmt::format("Type I error: {}\nPower: {}\n", format_number(result.type1),
                         format_number(result.achieved_power));
  if (result.confirmed_type1) {
    a.table += fmt::format("Bayesian type I error at these cutoffs: {}\n",
                           format_number(*result.confirmed_type1));
  }
  return a;
}

Artifacts run_curve(const RunConfig& cfg) {
  const auto control = cfg.control();
  Artifacts a;
  a.results = nlohmann::json::array();
  if (cfg.curve_axis == CurveAxis::Effect) {
    a.csv = "Scenario,Effect Size,Power (%)\n";
    a.table = fmt::format("{:<12}  {:>11}  {:>9}\n", "Scenario", "Effect Size", "Power (%)");
    for (const auto& s : cfg.scenarios) {
      const auto oc = operating_characteristics(cfg.design, control, s.effect, cfg.n_trials);
      const double es = effect_size(cfg.design.design, control, s.effect, cfg.design.utility);
      a.csv += fmt::format("{},{},{}\n", csv_field(s.label), format_number(es),
                           format_number(oc.prn));
      a.table += fmt::format("{:<12}  {:>11}  {:>9}\n", s.label, format_number(es),
                             format_number(oc.prn));
      a.results.push_back(
          scenario_json(s.label, cfg.design.design, control, s.effect, cfg.design.utility, oc));
    }
    return a;
  }
  const auto& s = cfg.scenarios.front();
  a.csv = "Sample Size,Power (%)\n";
  a.table = fmt::format("{:>11}  {:>9}\n", "Sample Size", "Power (%)");
  for (std::int64_t n : cfg.n_grid) {
    DesignConfig at = cfg.design;
    at.n_stage = n;
    at.switch_sizes = SwitchSizes{n, n, n, n};
    const auto oc = operating_characteristics(at, control, s.effect, cfg.n_trials);
    a.csv += fmt::format("{},{}\n", n, format_number(oc.prn));
    a.table += fmt::format("{:>11}  {:>9}\n", n, format_number(oc.prn));
    auto j = scenario_json(s.label, at.design, control, s.effect, at.utility, oc);
    j["n_per_arm_per_stage"] = n;
    a.results.push_back(std::move(j));
  }
  return a;
}

// Never overwrite earlier outputs unless asked: fall back to a fresh
// timestamped subdirectory.
fs::path output_dir(const fs::path& base, const std::vector<std::string>& names,
                    bool overwrite) {
  fs::create_directories(base);
  const bool clash = std::any_of(names.begin(), names.end(),
                                 [&](const std::string& n) { return fs::exists(base / n); });
  if (!clash || overwrite) return base;
  const auto stamp = fmt::format("{:%Y%m%d-%H%M%S}", fmt::localtime(std::chrono::system_clock::to_time_t(
                                                         std::chrono::system_clock::now())));
  fs::path dir = base / stamp;
  for (int i = 1; fs::exists(dir); ++i) dir = base / fmt::format("{}-{}", stamp, i);
  fs::create_directories(dir);
  return dir;
}

int execute(Command command, const Flags& flags, const CLI::App& sub, std::ostream& out,
            std::ostream& err) {
  Overrides ov;
  if (sub.count("--seed")) ov.seed = flags.seed;
  if (sub.count("--ntrial")) ov.ntrial = flags.ntrial;
  if (sub.count("--alpha")) ov.alpha = flags.alpha;
  if (sub.count("--power")) ov.power = flags.power;
  if (sub.count("--out")) ov.out = flags.out;
  if (sub.count("--threads")) ov.threads = flags.threads;
  if (sub.count("--method")) {
    if (flags.method == "bayesian" || flags.method == "Bayesian") {
      ov.method = Method::Bayesian;
    } else if (flags.method == "frequentist" || flags.method == "Frequentist") {
      ov.method = Method::Frequentist;
    } else {
      throw ConfigError("--method", fmt::format("unknown method '{}'", flags.method));
    }
  }

  RunConfig cfg = build_run_config(command, parse_key_values(read_file(flags.config)), ov);
  if (flags.confirm) cfg.confirm_bayesian = true;
  if (flags.no_confirm) cfg.confirm_bayesian = false;

  Artifacts a;
  if (is_operating_characteristics(command)) {
    a = run_oc(cfg);
  } else if (is_sample_size(command)) {
    a = run_ss(cfg);
  } else {
    a = run_curve(cfg);
  }

  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["command"] = std::string(to_string(command));
  doc["seed"] = cfg.design.seed;
  doc["threads"] = cfg.design.threads;
  doc["config"] = to_json(cfg);
  doc["results"] = std::move(a.results);

  const std::string stem(to_string(command));
  const std::vector<std::string> names = {stem + ".csv", stem + ".json"};
  const auto dir = output_dir(cfg.out_dir, names, flags.overwrite);
  write_file(dir / names[0], a.csv);
  write_file(dir / names[1], doc.dump(2) + "\n");

  out << a.table;
  out << "Wrote " << (dir / names[0]).string() << " and " << (dir / names[1]).string() << "\n";
  (void)err;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate and calibrate two-stage designs for ordinal endpoints", "ordgsd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Flags flags;
  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::SsPo, "sample size for the PO design"},
      {Command::SsNpo, "sample size for the NPO design"},
      {Command::SsSwitch, "sample size for the PO/NPO switch design"},
      {Command::OcPo, "operating characteristics of the PO design"},
      {Command::OcNpo, "operating characteristics of the NPO design"},
      {Command::OcSwitch, "operating characteristics of the switch design"},
      {Command::PowerCurve, "power against effect size or sample size"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [command, help] : commands) {
    auto* sub = app.add_subcommand(std::string(to_string(command)), help);
    sub->add_option("-c,--config", flags.config, "key = value configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--ntrial", flags.ntrial, "simulated trials per scenario");
    sub->add_option("--alpha", flags.alpha, "target type I error");
    sub->add_option("--power", flags.power, "target power");
    sub->add_option("--method", flags.method, "bayesian or frequentist");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--threads", flags.threads, "worker threads");
    sub->add_flag("--overwrite", flags.overwrite, "replace existing outputs");
    sub->add_flag("--confirm", flags.confirm, "Bayesian type I confirmation for sizing");
    sub->add_flag("--no-confirm", flags.no_confirm, "skip the Bayesian confirmation");
    subs.emplace_back(command, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& [command, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      return execute(command, flags, *sub, out, err);
    } catch (const ConfigError& e) {
      err << "configuration error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const TargetUnreachable& e) {
      err << "target unreachable: " << e.what() << "\n";
      return kExitUnreachable;
    } catch (const NoFeasiblePair& e) {
      err << "no feasible cutoffs: " << e.what() << "\n";
      return kExitUnreachable;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  return kExitUsage;
}

}  // namespace ordgsd::cli
