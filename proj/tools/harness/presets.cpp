#include "presets.hpp"

namespace harness {

const std::vector<ExperimentPreset>& presets() {
  static const std::vector<ExperimentPreset> table = {
      {"fig1", 10000, 1e2, false},
      {"fig2", 10000, 1e4, false},
      {"fig3", 10000, 5e3, false},
      {"fig4", 10000, 8e3, false},
      {"fig5", 300000, 1e5, true},
  };
  return table;
}

const ExperimentPreset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw config_error("unknown preset '" + name + "' (expected fig1..fig5)");
}

RunConfig preset_config(const ExperimentPreset& preset, std::uint64_t seed, std::size_t replicas) {
  RunConfig c;
  c.kernel = "multiplicative";
  c.alpha = 1.0;
  c.n = preset.n;
  c.cutoff_mode = "absolute";
  c.cutoff_value = preset.cutoff;
  c.t_max = 3.0;
  c.obs_grid = default_grid();
  c.seed = seed;
  c.replicas = replicas;
  c.observables = {"count_at_mass:2", "mass_fraction_largest", "inert_count"};
  return c;
}

}  // namespace harness
