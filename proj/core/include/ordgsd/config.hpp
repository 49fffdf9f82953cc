#pragma once

// Run configuration for the command-line tool.
//
// The file is plain `key = value` lines; `#` starts a comment. Lists are
// comma separated; integer and cutoff grids also accept `start:stop:step`.
// `scenario` may repeat, one odds-ratio row per line (a single number means
// a proportional effect). The full key list is in README.md.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordgsd/calibration.hpp"
#include "ordgsd/trial.hpp"

namespace ordgsd {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Throws ConfigError naming the line for malformed entries.
std::vector<KeyValue> parse_key_values(std::string_view text);

enum class Command { SsPo, SsNpo, SsSwitch, OcPo, OcNpo, OcSwitch, PowerCurve };

std::optional<Command> parse_command(std::string_view name) noexcept;
std::string_view to_string(Command c) noexcept;
bool is_sample_size(Command c) noexcept;
bool is_operating_characteristics(Command c) noexcept;

enum class CurveAxis { Effect, SampleSize };

struct ScenarioInput {
  std::string label;
  EffectSpec effect;
};

/// Command-line overrides applied on top of the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> ntrial;
  std::optional<double> alpha;
  std::optional<double> power;
  std::optional<Method> method;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

struct RunConfig {
  Command command = Command::OcPo;
  DesignConfig design;
  std::vector<double> control_probs;
  std::vector<ScenarioInput> scenarios;
  std::optional<EffectSpec> effect_alt;
  double alpha = 0.05;
  double power = 0.8;
  std::vector<std::int64_t> n_grid;
  std::vector<std::int64_t> npo_n_grid;
  CutoffGrid grid = CutoffGrid::defaults();
  std::size_t n_trials = 1000;
  bool confirm_bayesian = false;
  bool calibrate_cutoffs = false;  ///< oc-*: choose cutoffs at `alpha` on the grid first
  CurveAxis curve_axis = CurveAxis::Effect;
  CutpointPriorReading cutpoint_reading = CutpointPriorReading::Precision;
  std::string out_dir = "ordgsd-out";

  CategoryDistribution control() const { return CategoryDistribution(control_probs); }
};

/// Builds and validates a configuration for `command`. Every failure is a
/// ConfigError naming the offending key.
RunConfig build_run_config(Command command, const std::vector<KeyValue>& entries,
                           const Overrides& overrides = {});

/// Every setting that affects results as explicit key = value lines;
/// parsing it back yields the same configuration. The output directory is
/// left out so that outputs do not depend on where they are written.
std::string canonical_config_text(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace ordgsd
