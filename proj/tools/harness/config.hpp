#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gk.hpp"

namespace harness {

struct IntegralEntry {
  std::string observable;
  double from = 0.0;
  double to = std::numeric_limits<double>::infinity();

  friend bool operator==(const IntegralEntry&, const IntegralEntry&) = default;
};

/// Run description as stored in JSON config files:
///
///   {"kernel": {"family": "multiplicative", "alpha": 1.0},
///    "n": 10000, "masses": [...optional...],
///    "cutoff": {"mode": "none" | "absolute" | "fraction", "value": 100},
///    "t_max": 3.0, "obs_grid": [0, 0.05, ...], "seed": 7, "replicas": 20,
///    "observables": ["count_at_mass:2"],
///    "integrals": [{"observable": "pair_tail:10:10000", "from": 0, "to": 3}],
///    "clock": "auto", "threads": 0}
struct RunConfig {
  std::string kernel = "multiplicative";
  double alpha = 1.0;
  std::size_t n = 1;
  std::vector<double> masses;
  std::string cutoff_mode = "none";
  double cutoff_value = 0.0;
  double t_max = 1.0;
  std::vector<double> obs_grid;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  std::vector<std::string> observables;
  std::vector<IntegralEntry> integrals;
  std::string clock = "auto";
  unsigned threads = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);
RunConfig load_config(const std::string& path);

/// Command-line overrides; unset fields keep the config value.
struct Overrides {
  std::optional<std::string> kernel;
  std::optional<double> alpha;
  std::optional<std::size_t> n;
  std::optional<double> cutoff;
  std::optional<double> cutoff_frac;
  std::optional<double> t_max;
  std::optional<std::vector<double>> grid;
  std::optional<std::size_t> replicas;
  std::optional<std::uint64_t> seed;
};

void apply(RunConfig& config, const Overrides& overrides);

/// "a:step:b" (inclusive range) or a comma-separated list of times.
std::vector<double> parse_grid(const std::string& text);
/// t = 0, 0.05, ..., 3.0.
std::vector<double> default_grid();

struct BuildOptions {
  bool record_events = false;
  bool record_snapshots = false;
};

/// Translates to a validated library configuration.
ConfigHandle build(const RunConfig& config, const BuildOptions& options = {});

/// Runs the ensemble described by `config`.
Ensemble simulate(const RunConfig& config, const BuildOptions& options = {});

}  // namespace harness
