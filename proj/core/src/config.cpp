#include "ordgsd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ordgsd/errors.hpp"

namespace ordgsd {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "design",         "control",          "utility",         "n_stage",
    "n_stage_po",     "n_stage_npo",      "futility",        "superiority",
    "scenario",       "catalog",          "or_alt",          "alpha",
    "power",          "n_grid",           "n_grid_npo",      "futility_grid",
    "superiority_grid", "ntrial",         "seed",            "threads",
    "method",         "confirm",          "curve",           "out",
    "mcmc_burn",      "mcmc_keep",        "fix_mu",          "cutpoint_prior",
    "cutpoint_prior_var", "mu_prior_mean", "mu_prior_var",   "delta_prior_mean",
    "delta_prior_var", "calibrate", "rj_sweeps",       "pseudo_prior_var", "model_prior_npo",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& key, std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, fmt::format("'{}' is not a number", s));
  }
  return v;
}

std::int64_t to_int(const std::string& key, std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(key, fmt::format("'{}' is not an integer", s));
  }
  return v;
}

std::vector<double> to_doubles(const std::string& key, std::string_view s) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(to_double(key, part));
  return out;
}

std::vector<double> to_double_grid(const std::string& key, std::string_view s) {
  if (s.find(':') == std::string_view::npos) return to_doubles(key, s);
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ConfigError(key, "ranges are written start:stop:step");
  const double from = to_double(key, parts[0]);
  const double to = to_double(key, parts[1]);
  const double by = to_double(key, parts[2]);
  if (!(by > 0.0) || to < from) throw ConfigError(key, "range needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto n = static_cast<int>(std::floor((to - from) / by + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(std::round((from + i * by) * 1e9) / 1e9);
  return out;
}

std::vector<std::int64_t> to_int_grid(const std::string& key, std::string_view s) {
  std::vector<std::int64_t> out;
  if (s.find(':') != std::string_view::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError(key, "ranges are written start:stop:step");
    const auto from = to_int(key, parts[0]);
    const auto to = to_int(key, parts[1]);
    const auto by = to_int(key, parts[2]);
    if (by < 1 || to < from) throw ConfigError(key, "range needs step >= 1 and stop >= start");
    for (auto n = from; n <= to; n += by) out.push_back(n);
  } else {
    for (auto part : split(s, ',')) out.push_back(to_int(key, part));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1) throw ConfigError(key, "sample sizes must be at least 1");
    if (i > 0 && out[i] <= out[i - 1]) throw ConfigError(key, "grid must be strictly increasing");
  }
  return out;
}

bool to_bool(const std::string& key, std::string_view s) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError(key, fmt::format("'{}' is not a boolean", s));
}

Method to_method(const std::string& key, std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "bayesian") return Method::Bayesian;
  if (lower == "frequentist") return Method::Frequentist;
  throw ConfigError(key, fmt::format("unknown method '{}' (bayesian|frequentist)", s));
}

Design design_for(Command c) {
  switch (c) {
    case Command::SsPo:
    case Command::OcPo:
      return Design::PO;
    case Command::SsNpo:
    case Command::OcNpo:
      return Design::NPO;
    case Command::SsSwitch:
    case Command::OcSwitch:
      return Design::Switch;
    case Command::PowerCurve:
      break;
  }
  return Design::PO;
}

// Cutoffs calibrated for the reference six-level setting at n = 100.
std::pair<double, double> default_cutoffs(Design d) {
  switch (d) {
    case Design::PO:
      return {0.2, 0.95};
    case Design::NPO:
      return {0.2, 0.86};
    case Design::Switch:
      return {0.2, 0.97};
  }
  return {0.2, 0.95};
}

template <typename F>
auto keyed(const std::string& key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}

std::string join(const std::vector<double>& v) { return fmt::format("{}", fmt::join(v, ", ")); }
std::string join(const std::vector<std::int64_t>& v) {
  return fmt::format("{}", fmt::join(v, ", "));
}

std::vector<double> per_boundary(const std::string& key, std::string_view s, std::size_t k) {
  auto v = to_doubles(key, s);
  if (v.size() == 1) v.assign(k, v.front());
  if (v.size() != k) throw ConfigError(key, fmt::format("expected 1 or {} values", k));
  return v;
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto hash = raw.find('#');
    const auto line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}", line_no), "expected 'key = value'");
    }
    KeyValue kv{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                line_no};
    if (kv.key.empty()) throw ConfigError(fmt::format("line {}", line_no), "empty key");
    if (kv.value.empty()) throw ConfigError(kv.key, "empty value");
    out.push_back(std::move(kv));
  }
  return out;
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  static const std::map<std::string_view, Command> table = {
      {"ss-po", Command::SsPo},         {"ss-npo", Command::SsNpo},
      {"ss-switch", Command::SsSwitch}, {"oc-po", Command::OcPo},
      {"oc-npo", Command::OcNpo},       {"oc-switch", Command::OcSwitch},
      {"power-curve", Command::PowerCurve}};
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::SsPo:
      return "ss-po";
    case Command::SsNpo:
      return "ss-npo";
    case Command::SsSwitch:
      return "ss-switch";
    case Command::OcPo:
      return "oc-po";
    case Command::OcNpo:
      return "oc-npo";
    case Command::OcSwitch:
      return "oc-switch";
    case Command::PowerCurve:
      return "power-curve";
  }
  return "?";
}

bool is_sample_size(Command c) noexcept {
  return c == Command::SsPo || c == Command::SsNpo || c == Command::SsSwitch;
}

bool is_operating_characteristics(Command c) noexcept {
  return c == Command::OcPo || c == Command::OcNpo || c == Command::OcSwitch;
}

RunConfig build_run_config(Command command, const std::vector<KeyValue>& entries,
                           const Overrides& overrides) {
  std::map<std::string, std::vector<const KeyValue*>, std::less<>> by_key;
  for (const auto& kv : entries) {
    if (!kKnownKeys.contains(kv.key)) throw ConfigError(kv.key, "unknown key");
    auto& slot = by_key[kv.key];
    if (!slot.empty() && kv.key != "scenario") {
      throw ConfigError(kv.key, fmt::format("given twice (lines {} and {})", slot.front()->line,
                                            kv.line));
    }
    slot.push_back(&kv);
  }
  auto get = [&](std::string_view key) -> std::optional<std::string> {
    const auto it = by_key.find(key);
    if (it == by_key.end()) return std::nullopt;
    return it->second.front()->value;
  };

  RunConfig cfg;
  cfg.command = command;

  // Levels come from the control distribution.
  const auto control = get("control");
  if (!control) throw ConfigError("control", "required key missing");
  cfg.control_probs = to_doubles("control", *control);
  keyed("control", [&] { return cfg.control(); });
  const std::size_t levels = cfg.control_probs.size();
  const std::size_t k = levels - 1;

  DesignConfig& d = cfg.design;
  d.design = design_for(command);
  if (auto v = get("design")) {
    Design requested;
    if (*v == "po") {
      requested = Design::PO;
    } else if (*v == "npo") {
      requested = Design::NPO;
    } else if (*v == "switch") {
      requested = Design::Switch;
    } else {
      throw ConfigError("design", fmt::format("unknown design '{}' (po|npo|switch)", *v));
    }
    if (command != Command::PowerCurve && requested != d.design) {
      throw ConfigError("design", fmt::format("'{}' conflicts with subcommand {}", *v,
                                              to_string(command)));
    }
    d.design = requested;
  }

  if (auto v = get("utility")) {
    d.utility = keyed("utility", [&] { return UtilityScale(to_doubles("utility", *v)); });
  } else if (levels == 6) {
    d.utility = reference_utility();
  } else {
    std::vector<double> pts(levels);
    for (std::size_t c = 0; c < levels; ++c) {
      pts[c] = 100.0 * static_cast<double>(levels - 1 - c) / static_cast<double>(levels - 1);
    }
    d.utility = UtilityScale(std::move(pts));
  }
  if (d.utility.levels() != levels) {
    throw ConfigError("utility", fmt::format("has {} levels, control has {}",
                                             d.utility.levels(), levels));
  }

  if (auto v = get("cutpoint_prior")) {
    if (*v == "precision") {
      cfg.cutpoint_reading = CutpointPriorReading::Precision;
    } else if (*v == "variance") {
      cfg.cutpoint_reading = CutpointPriorReading::Variance;
    } else {
      throw ConfigError("cutpoint_prior", "expected precision or variance");
    }
  }
  d.priors = PriorSpec::defaults(levels, cfg.cutpoint_reading);
  if (auto v = get("cutpoint_prior_var")) d.priors.cutpoint_var = to_double("cutpoint_prior_var", *v);
  if (auto v = get("mu_prior_mean")) d.priors.mu_mean = to_double("mu_prior_mean", *v);
  if (auto v = get("mu_prior_var")) d.priors.mu_var = to_double("mu_prior_var", *v);
  if (auto v = get("delta_prior_mean")) d.priors.delta_means = per_boundary("delta_prior_mean", *v, k);
  if (auto v = get("delta_prior_var")) d.priors.delta_vars = per_boundary("delta_prior_var", *v, k);
  if (!(d.priors.mu_var > 0.0)) throw ConfigError("mu_prior_var", "must be positive");
  if (!(d.priors.cutpoint_var > 0.0)) throw ConfigError("cutpoint_prior_var", "must be positive");
  for (double v : d.priors.delta_vars) {
    if (!(v > 0.0)) throw ConfigError("delta_prior_var", "must be positive");
  }

  if (auto v = get("mcmc_burn")) d.mcmc.n_burn = static_cast<std::size_t>(std::max<std::int64_t>(0, to_int("mcmc_burn", *v)));
  if (auto v = get("mcmc_keep")) d.mcmc.n_keep = static_cast<std::size_t>(std::max<std::int64_t>(0, to_int("mcmc_keep", *v)));
  if (d.mcmc.n_burn < 1) throw ConfigError("mcmc_burn", "must be at least 1");
  if (d.mcmc.n_keep < 1) throw ConfigError("mcmc_keep", "must be at least 1");
  if (auto v = get("fix_mu")) d.mcmc.fix_mu = to_bool("fix_mu", *v);

  if (auto v = get("rj_sweeps")) {
    const auto n = to_int("rj_sweeps", *v);
    if (n < 1) throw ConfigError("rj_sweeps", "must be at least 1");
    d.rjmcmc.n_sweeps = static_cast<std::size_t>(n);
  }
  if (auto v = get("pseudo_prior_var")) {
    d.rjmcmc.pseudo_prior_var = to_double("pseudo_prior_var", *v);
    if (!(d.rjmcmc.pseudo_prior_var > 0.0)) throw ConfigError("pseudo_prior_var", "must be positive");
  }
  if (auto v = get("model_prior_npo")) {
    const double p = to_double("model_prior_npo", *v);
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("model_prior_npo", "must lie in [0,1]");
    d.rjmcmc.model_priors = ModelPriors{1.0 - p, p};
  }

  if (auto v = get("n_stage")) {
    d.n_stage = to_int("n_stage", *v);
    if (d.n_stage < 1) throw ConfigError("n_stage", "must be at least 1");
  }
  auto stage_pair = [&](const std::string& key, std::int64_t& s1, std::int64_t& s2) {
    if (auto v = get(key)) {
      const auto g = split(*v, ',');
      if (g.size() != 2) throw ConfigError(key, "expected 'stage1, stage2'");
      s1 = to_int(key, g[0]);
      s2 = to_int(key, g[1]);
      if (s1 < 1 || s2 < 1) throw ConfigError(key, "stage sizes must be at least 1");
    }
  };
  stage_pair("n_stage_po", d.switch_sizes.po_stage1, d.switch_sizes.po_stage2);
  stage_pair("n_stage_npo", d.switch_sizes.npo_stage1, d.switch_sizes.npo_stage2);

  std::tie(d.c_f, d.c_s) = default_cutoffs(d.design);
  if (auto v = get("futility")) d.c_f = to_double("futility", *v);
  if (auto v = get("superiority")) d.c_s = to_double("superiority", *v);
  if (!(d.c_f >= 0.0 && d.c_f <= 1.0)) throw ConfigError("futility", "must lie in [0,1]");
  if (!(d.c_s >= 0.0)) throw ConfigError("superiority", "must be non-negative");
  if (!(d.c_f < d.c_s)) throw ConfigError("futility", "must be below the superiority cutoff");

  // Sizing searches default to the frequentist statistic with a Bayesian
  // confirmation of the type I error at the returned design.
  if (is_sample_size(command)) {
    d.method = Method::Frequentist;
    cfg.confirm_bayesian = true;
  }
  if (auto v = get("method")) d.method = to_method("method", *v);
  if (auto v = get("seed")) {
    const auto s = to_int("seed", *v);
    if (s < 0) throw ConfigError("seed", "must be non-negative");
    d.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("threads")) {
    const auto t = to_int("threads", *v);
    if (t < 1) throw ConfigError("threads", "must be at least 1");
    d.threads = static_cast<unsigned>(t);
  }
  if (auto v = get("ntrial")) {
    const auto n = to_int("ntrial", *v);
    if (n < 1) throw ConfigError("ntrial", "must be at least 1");
    cfg.n_trials = static_cast<std::size_t>(n);
  }
  if (auto v = get("alpha")) cfg.alpha = to_double("alpha", *v);
  if (auto v = get("power")) cfg.power = to_double("power", *v);
  if (auto v = get("confirm")) cfg.confirm_bayesian = to_bool("confirm", *v);
  if (auto v = get("calibrate")) cfg.calibrate_cutoffs = to_bool("calibrate", *v);
  if (auto v = get("out")) cfg.out_dir = *v;
  if (auto v = get("curve")) {
    if (*v == "effect") {
      cfg.curve_axis = CurveAxis::Effect;
    } else if (*v == "n") {
      cfg.curve_axis = CurveAxis::SampleSize;
    } else {
      throw ConfigError("curve", "expected effect or n");
    }
  }

  const bool npo_sizes = d.design == Design::NPO;
  cfg.n_grid = to_int_grid("n_grid", get("n_grid").value_or(npo_sizes ? "50:400:50" : "50:200:20"));
  cfg.npo_n_grid = to_int_grid("n_grid_npo", get("n_grid_npo").value_or("50:400:50"));
  if (auto v = get("futility_grid")) cfg.grid.futility = to_double_grid("futility_grid", *v);
  if (auto v = get("superiority_grid")) cfg.grid.superiority = to_double_grid("superiority_grid", *v);
  for (double v : cfg.grid.futility) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("futility_grid", "values must lie in [0,1]");
  }
  for (double v : cfg.grid.superiority) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("superiority_grid", "values must lie in [0,1]");
  }

  const auto ctrl = cfg.control();
  auto admissible = [&](const std::string& key, std::vector<double> ors) {
    if (ors.size() == 1) ors.assign(k, ors.front());
    if (ors.size() != k) throw ConfigError(key, fmt::format("expected 1 or {} odds ratios", k));
    return keyed(key, [&] {
      EffectSpec e(std::move(ors));
      (void)apply_odds_ratios(ctrl, e);
      return e;
    });
  };

  if (auto it = by_key.find("scenario"); it != by_key.end()) {
    for (const auto* kv : it->second) {
      std::string label = fmt::format("Scenario {}", cfg.scenarios.size() + 1);
      std::string_view body = kv->value;
      if (const auto colon = body.find(':'); colon != std::string_view::npos) {
        label = std::string(trim(body.substr(0, colon)));
        body = trim(body.substr(colon + 1));
        if (label.empty()) throw ConfigError("scenario", "empty scenario label");
        if (label.find_first_of(",\"\n") != std::string::npos) {
          throw ConfigError("scenario", "labels may not contain commas or quotes");
        }
      }
      cfg.scenarios.push_back(ScenarioInput{label, admissible("scenario", to_doubles("scenario", body))});
    }
  }
  if (auto v = get("catalog")) {
    const auto catalog = scenario_catalog();
    if (levels != catalog.front().control.levels()) {
      throw ConfigError("catalog", "catalog scenarios need a 6-level control");
    }
    for (auto part : split(*v, ',')) {
      const auto id = to_int("catalog", part);
      if (id < 1 || id > static_cast<std::int64_t>(catalog.size())) {
        throw ConfigError("catalog", fmt::format("no catalog scenario {}", id));
      }
      const auto& sc = catalog[static_cast<std::size_t>(id - 1)];
      cfg.scenarios.push_back(ScenarioInput{
          fmt::format("Scenario {}", id),
          admissible("catalog", {sc.effect.odds_ratios().begin(), sc.effect.odds_ratios().end()})});
    }
  }
  if (auto v = get("or_alt")) cfg.effect_alt = admissible("or_alt", to_doubles("or_alt", *v));

  // Flag overrides win over the file.
  if (overrides.seed) d.seed = *overrides.seed;
  if (overrides.ntrial) {
    if (*overrides.ntrial < 1) throw ConfigError("ntrial", "must be at least 1");
    cfg.n_trials = *overrides.ntrial;
  }
  if (overrides.alpha) cfg.alpha = *overrides.alpha;
  if (overrides.power) cfg.power = *overrides.power;
  if (overrides.method) d.method = *overrides.method;
  if (overrides.out) cfg.out_dir = *overrides.out;
  if (overrides.threads) {
    if (*overrides.threads < 1) throw ConfigError("threads", "must be at least 1");
    d.threads = *overrides.threads;
  }

  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha", "must lie in (0,1)");
  if (!(cfg.power >= 0.0 && cfg.power < 1.0)) throw ConfigError("power", "must lie in [0,1)");

  const bool needs_scenarios = is_operating_characteristics(command) ||
                               command == Command::PowerCurve;
  if (needs_scenarios && cfg.scenarios.empty()) {
    throw ConfigError("scenario", "at least one scenario (or catalog entry) is required");
  }
  if (is_sample_size(command) && !cfg.effect_alt) {
    throw ConfigError("or_alt", "required key missing");
  }
  keyed("design", [&] {
    d.validate();
    return 0;
  });
  return cfg;
}

std::string canonical_config_text(const RunConfig& cfg) {
  const auto& d = cfg.design;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("design", std::string(to_string(d.design)));
  line("control", join(cfg.control_probs));
  line("utility", join(std::vector<double>(d.utility.points().begin(), d.utility.points().end())));
  line("n_stage", fmt::format("{}", d.n_stage));
  line("n_stage_po", fmt::format("{}, {}", d.switch_sizes.po_stage1, d.switch_sizes.po_stage2));
  line("n_stage_npo", fmt::format("{}, {}", d.switch_sizes.npo_stage1, d.switch_sizes.npo_stage2));
  line("futility", fmt::format("{}", d.c_f));
  line("superiority", fmt::format("{}", d.c_s));
  line("method", std::string(to_string(d.method)));
  line("seed", fmt::format("{}", d.seed));
  line("ntrial", fmt::format("{}", cfg.n_trials));
  line("threads", fmt::format("{}", d.threads));
  line("alpha", fmt::format("{}", cfg.alpha));
  line("power", fmt::format("{}", cfg.power));
  line("n_grid", join(cfg.n_grid));
  line("n_grid_npo", join(cfg.npo_n_grid));
  line("futility_grid", join(cfg.grid.futility));
  line("superiority_grid", join(cfg.grid.superiority));
  line("confirm", cfg.confirm_bayesian ? "true" : "false");
  line("calibrate", cfg.calibrate_cutoffs ? "true" : "false");
  line("curve", cfg.curve_axis == CurveAxis::Effect ? "effect" : "n");
  line("mcmc_burn", fmt::format("{}", d.mcmc.n_burn));
  line("mcmc_keep", fmt::format("{}", d.mcmc.n_keep));
  line("fix_mu", d.mcmc.fix_mu ? "true" : "false");
  line("cutpoint_prior",
       cfg.cutpoint_reading == CutpointPriorReading::Precision ? "precision" : "variance");
  line("cutpoint_prior_var", fmt::format("{}", d.priors.cutpoint_var));
  line("mu_prior_mean", fmt::format("{}", d.priors.mu_mean));
  line("mu_prior_var", fmt::format("{}", d.priors.mu_var));
  line("delta_prior_mean", join(d.priors.delta_means));
  line("delta_prior_var", join(d.priors.delta_vars));
  line("rj_sweeps", fmt::format("{}", d.rjmcmc.n_sweeps));
  line("pseudo_prior_var", fmt::format("{}", d.rjmcmc.pseudo_prior_var));
  line("model_prior_npo", fmt::format("{}", d.rjmcmc.model_priors.npo));
  if (cfg.effect_alt) {
    const auto ors = cfg.effect_alt->odds_ratios();
    line("or_alt", join(std::vector<double>(ors.begin(), ors.end())));
  }
  for (const auto& s : cfg.scenarios) {
    const auto ors = s.effect.odds_ratios();
    line("scenario", fmt::format("{}: {}", s.label, join(std::vector<double>(ors.begin(), ors.end()))));
  }
  return out;
}

nlohmann::json to_json(const RunConfig& cfg) {
  const auto& d = cfg.design;
  nlohmann::json j;
  j["command"] = std::string(to_string(cfg.command));
  j["design"] = std::string(to_string(d.design));
  j["control"] = cfg.control_probs;
  j["utility"] = std::vector<double>(d.utility.points().begin(), d.utility.points().end());
  j["n_stage"] = d.n_stage;
  j["switch_sizes"] = {{"po_stage1", d.switch_sizes.po_stage1},
                       {"po_stage2", d.switch_sizes.po_stage2},
                       {"npo_stage1", d.switch_sizes.npo_stage1},
                       {"npo_stage2", d.switch_sizes.npo_stage2}};
  j["futility"] = d.c_f;
  j["superiority"] = d.c_s;
  j["method"] = std::string(to_string(d.method));
  j["seed"] = d.seed;
  j["ntrial"] = cfg.n_trials;
  j["threads"] = d.threads;
  j["alpha"] = cfg.alpha;
  j["power"] = cfg.power;
  j["n_grid"] = cfg.n_grid;
  j["n_grid_npo"] = cfg.npo_n_grid;
  j["futility_grid"] = cfg.grid.futility;
  j["superiority_grid"] = cfg.grid.superiority;
  j["confirm"] = cfg.confirm_bayesian;
  j["calibrate"] = cfg.calibrate_cutoffs;
  j["curve"] = cfg.curve_axis == CurveAxis::Effect ? "effect" : "n";
  j["mcmc"] = {{"n_burn", d.mcmc.n_burn}, {"n_keep", d.mcmc.n_keep}, {"fix_mu", d.mcmc.fix_mu}};
  j["priors"] = {{"mu_mean", d.priors.mu_mean},
                 {"mu_var", d.priors.mu_var},
                 {"cutpoint_reading", cfg.cutpoint_reading == CutpointPriorReading::Precision
                                          ? "precision"
                                          : "variance"},
                 {"cutpoint_var", d.priors.cutpoint_var},
                 {"delta_means", d.priors.delta_means},
                 {"delta_vars", d.priors.delta_vars}};
  j["rjmcmc"] = {{"n_sweeps", d.rjmcmc.n_sweeps},
                 {"pseudo_prior_var", d.rjmcmc.pseudo_prior_var},
                 {"model_prior_npo", d.rjmcmc.model_priors.npo}};
  if (cfg.effect_alt) {
    const auto ors = cfg.effect_alt->odds_ratios();
    j["or_alt"] = std::vector<double>(ors.begin(), ors.end());
  }
  j["scenarios"] = nlohmann::json::array();
  for (const auto& s : cfg.scenarios) {
    const auto ors = s.effect.odds_ratios();
    j["scenarios"].push_back(
        {{"label", s.label}, {"odds_ratios", std::vector<double>(ors.begin(), ors.end())}});
  }
  j["canonical"] = canonical_config_text(cfg);
  return j;
}

}  // namespace ordgsd
