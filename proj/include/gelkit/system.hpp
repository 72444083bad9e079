#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gelkit/kernel.hpp"
#include "gelkit/weight_tree.hpp"

namespace gelkit {

/// Index of an active particle's slot. Stable until the particle merges.
using Slot = std::size_t;

struct MergeOutcome {
  Slot slot;          // slot now holding the merged particle, if it stayed active
  double merged_mass;
  bool became_inert;
};

/// Finite coalescing particle system under a cutoff. Active particles live in a
/// slot array indexed by a sum tree (weights x, x^alpha, x^(1+alpha)); inert
/// particles have zero rate forever and are kept in a side list.
class ParticleSystem {
 public:
  /// n unit masses. Throws ConfigError for n = 0.
  static ParticleSystem monodisperse(std::size_t n, Cutoff cut = Cutoff::none(), double alpha = 1.0);
  /// Throws ConfigError for an empty list or a non-positive mass.
  static ParticleSystem from_masses(std::span<const double> masses, Cutoff cut = Cutoff::none(),
                                    double alpha = 1.0);

  std::size_t size() const { return active_count_ + inert_.size(); }
  std::size_t active_count() const { return active_count_; }
  std::size_t inert_count() const { return inert_.size(); }
  double total_mass() const { return total_mass_; }
  const Cutoff& cutoff() const { return cutoff_; }
  double alpha() const { return alpha_; }

  double sum_mass_active() const { return tree_.total(0); }
  double sum_mass_alpha_active() const { return tree_.total(1); }
  double sum_mass_one_plus_alpha_active() const { return tree_.total(2); }

  std::size_t slot_count() const { return slot_mass_.size(); }
  bool is_occupied(Slot s) const { return s < slot_mass_.size() && slot_mass_[s] > 0.0; }
  double mass(Slot s) const { return slot_mass_.at(s); }
  std::vector<Slot> active_slots() const;
  const std::vector<double>& inert_masses() const { return inert_; }

  /// Slot drawn with probability x / S_1 (resp. x^alpha / S_alpha) from a
  /// uniform variate u in [0,1). Requires at least one active particle.
  Slot draw_by_mass(double u) const;
  Slot draw_by_mass_alpha(double u) const;

  /// Replaces particles i and j by one of mass x_i + x_j. The merged particle
  /// keeps slot i if it is still active. Throws LogicError for i == j or a
  /// slot that does not hold an active particle.
  MergeOutcome coalesce(Slot i, Slot j);

  double largest() const { return largest_; }
  /// 0 when fewer than two particles exist.
  double second_largest() const;

  /// All masses, active first, in no particular order.
  std::vector<double> masses() const;
  /// All masses in non-increasing order (M_1 >= M_2 >= ...).
  std::vector<double> sorted_masses() const;

  template <typename F>
  void for_each_mass(F&& f) const {
    for (double x : slot_mass_)
      if (x > 0.0) f(x);
    for (double x : inert_) f(x);
  }

 private:
  ParticleSystem(std::span<const double> masses, Cutoff cut, double alpha);
  WeightTree<3>::Weights weights_of(double x) const;

  Cutoff cutoff_;
  double alpha_;
  double total_mass_ = 0.0;
  double largest_ = 0.0;
  std::size_t active_count_ = 0;
  std::vector<double> slot_mass_;  // 0 marks a free slot
  std::vector<double> inert_;
  WeightTree<3> tree_;
};

enum class ObservableKind {
  CountAtMass,          // (1/m) #{i : x_i = k}
  MassFractionLargest,  // M_1 / m
  TailMass,             // (1/m) sum x_i 1{x_i >= b}
  SecondTail,           // (1/m) sum_{i>=2} M_i 1{M_i >= b}
  Moment,               // (1/m) sum x_i^p
  ActiveMassFraction,   // S_1 / m
  PairTail,             // (1/m^2) sum_{i!=j} x_i x_j 1{x_i,x_j in [b,a]}
  InertCount,           // number of inert particles (not normalised)
};

/// A functional of the empirical measure (1/m) sum delta_{x_i}. Text form is
/// "<kind>[:p1[:p2]]", e.g. "count_at_mass:2", "pair_tail:10:10000".
struct ObservableSpec {
  ObservableKind kind = ObservableKind::MassFractionLargest;
  double param = 0.0;
  double param2 = 0.0;

  static ObservableSpec parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const ObservableSpec&, const ObservableSpec&) = default;
};

double observe(const ParticleSystem& sys, const ObservableSpec& spec);

}  // namespace gelkit
