#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace harness {

/// Monodisperse multiplicative-kernel experiment with cutoff a_n, observed
/// through count_at_mass:2 on t in [0, 3].
struct ExperimentPreset {
  std::string name;
  std::size_t n;  // n = m_n
  double cutoff;  // a_n
  bool slow;      // left out of the default selftest

  double gamma() const { return cutoff / static_cast<double>(n); }
  /// Presets whose cutoff is a fixed fraction of the mass, where giant
  /// particles turning inert mark changes of behaviour.
  bool tracks_transitions() const { return gamma() >= 0.1 && gamma() < 1.0; }
};

const std::vector<ExperimentPreset>& presets();
/// Throws a config error for unknown names.
const ExperimentPreset& find_preset(const std::string& name);

inline constexpr std::size_t kDefaultReplicas = 20;

RunConfig preset_config(const ExperimentPreset& preset, std::uint64_t seed,
                        std::size_t replicas);

}  // namespace harness
