#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gelkit/kernel.hpp"
#include "gelkit/rng.hpp"
#include "gelkit/system.hpp"

namespace gelkit {

/// Total jump rate (1/m) sum_{i<j} K_a(x_i, x_j), by direct enumeration.
double total_rate_naive(const ParticleSystem& sys, const KernelSpec& kernel);

/// (S_1^2 - S_2) / (2m) over active particles. Multiplicative kernel only.
double total_rate_product_closed_form(const ParticleSystem& sys, const KernelSpec& kernel);

/// Rate of the thinning proposal clock, (C/m) S_alpha S_1. Self-pairs are
/// included in the proposal stream and rejected.
double majorant_rate(const ParticleSystem& sys, const KernelSpec& kernel);

/// Unordered pair of distinct active slots drawn with probability
/// proportional to K(x_i, x_j). Requires two active particles.
std::pair<Slot, Slot> sample_pair(const ParticleSystem& sys, const KernelSpec& kernel, Rng& rng);

enum class ClockMode {
  Auto,          // ExactProduct for the multiplicative kernel, Thinning otherwise
  ExactProduct,  // closed-form total rate
  Thinning,      // proposals against the majorant, accepted with K / majorant
};

struct PendingEvent {
  double time;
  Slot first;
  Slot second;
  std::uint64_t proposals;  // majorant proposals consumed, including the accepted one
};

/// Next coalescence after t_now, or nullopt when no active pair remains
/// (absorption). The state is not modified.
std::optional<PendingEvent> next_event(const ParticleSystem& sys, const KernelSpec& kernel,
                                       Rng& rng, double t_now, ClockMode mode = ClockMode::Auto);

struct StepResult {
  double time;
  bool absorbed;
  MergeOutcome merge{};
};

/// next_event followed by the coalescence. On absorption the state is left
/// unchanged and `time` is infinite.
StepResult step(ParticleSystem& sys, const KernelSpec& kernel, Rng& rng, double t_now,
                ClockMode mode = ClockMode::Auto);

struct CutoffMode {
  enum class Kind { None, Absolute, FractionOfMass };
  Kind kind = Kind::None;
  double value = 0.0;

  static CutoffMode none() { return {}; }
  static CutoffMode absolute(double a) { return {Kind::Absolute, a}; }
  static CutoffMode fraction_of_mass(double gamma) { return {Kind::FractionOfMass, gamma}; }

  /// None resolves to a = m (the classical process).
  Cutoff resolve(double total_mass) const;

  friend bool operator==(const CutoffMode&, const CutoffMode&) = default;
};

/// Integral over [from, to] of an observable along the piecewise-constant path.
struct TimeIntegralSpec {
  ObservableSpec observable;
  double from = 0.0;
  double to = std::numeric_limits<double>::infinity();

  friend bool operator==(const TimeIntegralSpec&, const TimeIntegralSpec&) = default;
};

struct SimConfig {
  KernelSpec kernel = KernelSpec::multiplicative();
  std::size_t n = 1;
  std::vector<double> initial_masses;  // empty means n unit masses
  CutoffMode cutoff;
  double t_max = 1.0;
  std::vector<double> obs_grid;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  std::vector<ObservableSpec> observables;
  std::vector<TimeIntegralSpec> integrals;
  ClockMode clock = ClockMode::Auto;
  bool record_events = false;
  bool record_snapshots = false;  // mass histograms at each grid time
  unsigned threads = 0;  // 0: GELKIT_THREADS or hardware concurrency

  /// Throws ConfigError on any violated constraint.
  void validate() const;
  ParticleSystem initial_system() const;
};

struct EventRecord {
  std::uint64_t index;
  double time;
  double first_mass;
  double second_mass;
};

/// Mass histogram, masses ascending.
struct Histogram {
  std::vector<double> masses;
  std::vector<std::uint64_t> counts;
};

Histogram histogram(const ParticleSystem& sys);

struct Trajectory {
  std::vector<double> times;                // equals the observation grid
  std::vector<std::string> names;           // one per observable
  std::vector<std::vector<double>> values;  // values[observable][time]
  std::vector<double> integrals;            // one per TimeIntegralSpec
  std::vector<double> inert_times;          // time each inert particle appeared (t > 0)
  std::vector<EventRecord> events;          // only with record_events
  std::vector<Histogram> snapshots;         // only with record_snapshots, one per grid time
  std::uint64_t event_count = 0;
  std::uint64_t proposals = 0;
  bool absorbed = false;
  double wall_seconds = 0.0;
  std::size_t final_particles = 0;
  double final_largest = 0.0;
};

/// One replica of the configured process. Each observable at grid time t is
/// the state left by the last event at or before t. Deterministic in
/// (config, replica).
Trajectory run(const SimConfig& config, std::size_t replica = 0);

struct Summary {
  double mean = 0.0;
  double se = 0.0;  // sample stddev / sqrt(count); 0 for a single replica
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

struct EnsembleResult {
  std::vector<Trajectory> replicas;
  std::vector<std::vector<Summary>> observables;  // [observable][time]
  std::vector<Summary> integrals;
};

/// Runs config.replicas independent replicas, concurrently when allowed.
/// Results do not depend on thread count or scheduling.
EnsembleResult run_ensemble(const SimConfig& config);

/// A state held from `time` until the next snapshot (or the end time).
struct MassSnapshot {
  double time;
  std::vector<double> masses;
};

/// Integral over the history of (1/m^2) sum_{i!=j} x_i x_j 1{x_i, x_j in [b,a]}.
/// Throws ConfigError unless b < a.
double pair_tail_integral(std::span<const MassSnapshot> history, double end_time,
                         double total_mass, double b, double a);

}  // namespace gelkit
