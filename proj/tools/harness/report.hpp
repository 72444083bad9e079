#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "presets.hpp"

namespace harness {

struct CompareRow {
  double t;
  double mc_mean;
  double mc_se;
  double flory_ref;
  double smolu_ref;
  double z_flory;  // (mean - ref) / se; 0 if they agree exactly, +-inf if se = 0
  double z_smolu;
};

/// Mean time at which the k-th giant particle crossed the cutoff and became inert.
struct Transition {
  std::size_t order;
  double mean_time;
  double se;
  std::size_t replicas_reached;
};

struct CompareReport {
  std::string preset;
  double gamma = 0.0;
  double t1 = 0.0;  // T1(gamma) when transitions are tracked, else 0
  std::vector<CompareRow> rows;
  std::vector<Transition> transitions;
  /// Last grid time up to which every row agrees with the Flory solution.
  double flory_until = 0.0;
  std::string verdict;  // "flory", "smoluchowski" or "flory until t=..., then departs"
};

/// |z| above this marks a row as disagreeing with a reference in verdicts.
inline constexpr double kVerdictZ = 4.0;

double z_score(double mean, double se, double reference);

/// Runs the preset's ensemble and overlays both explicit solutions. An empty
/// `grid` keeps the preset's t = 0, 0.05, ..., 3.
CompareReport run_preset(const ExperimentPreset& preset, std::uint64_t seed, std::size_t replicas,
                         const std::vector<double>& grid = {});

struct GiantRow {
  double t;
  double mean;  // ensemble mean of M_1 / m
  double se;
  double reference;  // 1 - flory_mass(t)
  double deviation;  // mean - reference
};

struct TailRow {
  double b;
  double mean;  // ensemble mean of the integral of second_tail:b over (1, t_max]
  double se;
};

struct GiantReport {
  std::vector<GiantRow> rows;
  std::vector<TailRow> tails;
};

/// Classical process (no cutoff), K = xy, n unit masses.
GiantReport giant_particle_report(std::size_t n, std::size_t replicas, const std::vector<double>& times,
                                  std::uint64_t seed, const std::vector<double>& bs = {10, 100, 1000});

struct PairTailRow {
  double b;
  double mean;  // ensemble mean of the pair-tail integral over [0, t_max] with a = m
  double se;
  double bound;  // L / b^alpha
};

std::vector<PairTailRow> pair_tail_report(std::size_t n, std::size_t replicas, double t_max,
                                          std::uint64_t seed, const std::vector<double>& bs);

}  // namespace harness
