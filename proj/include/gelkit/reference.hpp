#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gelkit/kernel.hpp"

namespace gelkit {

enum class Model { Smoluchowski, Flory };

std::string_view to_string(Model model);
/// Accepts "flory", "smoluchowski" (or "smolu").
Model parse_model(std::string_view name);

// Explicit solutions for K(x,y) = xy and unit-mass initial data.

/// k^(k-2)/k! t^(k-1) e^(-kt), evaluated in log space.
double flory_c(double t, std::int64_t k);
/// Equal to flory_c on [0,1]; k^(k-2)/k! t^(-1) e^(-k) afterwards.
double smoluchowski_c(double t, std::int64_t k);
double explicit_c(Model model, double t, std::int64_t k);

/// The root in (0,1) of x e^(-x) = t e^(-t), for t > 1 (bisection to 1e-12).
double t_star(double t);
/// First moment of the Flory solution: 1 on [0,1], t_star(t)/t after.
double flory_mass(double t);
/// First moment of either explicit solution: 1 on [0,1]; t_star(t)/t (Flory)
/// or 1/t (Smoluchowski) after.
double explicit_mass(Model model, double t);
/// Time at which the Flory lost mass first reaches gamma: -ln(1-gamma)/gamma.
double T1(double gamma);
/// Sum_{k <= k_max} k c(t,k) of the explicit solution.
double series_mass(Model model, double t, std::int64_t k_max);

/// <mu_0, x^(1-alpha)> / ((1 - 2^-alpha) c_lower), an upper bound on the gelation time.
double gel_time_upper_bound(const KernelSpec& kernel, double mu0_moment);
/// 1 / (c_lower (1 - 2^-alpha)); bounds the pair-tail integral by L / b^alpha.
double pair_tail_constant(const KernelSpec& kernel);

// Truncated discrete system for sizes 1..k_max.

struct OdeState {
  double t = 0.0;
  std::vector<double> c;  // c[k-1] is the concentration of size k
  double gel_mass = 0.0;  // 1 - sum k c_k

  double conc(std::size_t k) const { return c.at(k - 1); }
};

struct MassBalance {
  double dmass_dt;          // d/dt sum k c_k from the right-hand side
  double gel_sink;          // (sum k l(k) c_k) * gel_mass, Flory only
  double truncation_flux;   // mass carried past k_max by coagulation
};

/// dc_k/dt = 1/2 sum_{i+j=k} K(i,j) c_i c_j - c_k sum_{j<=k_max} K(k,j) c_j
///           - [Flory] c_k l(k) (1 - sum_j j c_j).
/// Pairs with i+j > k_max still deplete c_i and c_j; their mass leaves the
/// resolved sizes and shows up in gel_mass.
class CoagulationOde {
 public:
  CoagulationOde(Model model, const KernelSpec& kernel, std::size_t k_max);

  std::size_t k_max() const { return k_max_; }
  Model model() const { return model_; }

  void rhs(std::span<const double> c, std::span<double> out) const;
  /// One classical RK4 step. Throws SolverFailure if any |c_k| exceeds 1e6
  /// or becomes non-finite.
  void step(OdeState& state, double dt) const;
  MassBalance mass_balance(std::span<const double> c) const;
  OdeState initial_state() const;

 private:
  Model model_;
  std::size_t k_max_;
  std::vector<double> kernel_;  // k_max x k_max, K(i,j) at [(i-1) k_max + (j-1)]
  std::vector<double> limit_;   // l(k)
};

struct OdeOptions {
  std::size_t k_max = 300;
  double t_max = 1.0;
  double dt = 1e-3;
  std::size_t record_every = 1;  // keep every n-th step (the final state is always kept)
};

/// Integrates from the monodisperse state c = (1, 0, 0, ...).
std::vector<OdeState> ode_solve(Model model, const KernelSpec& kernel, const OdeOptions& options);

/// First recorded time at which gel_mass exceeds the threshold, or +inf.
double gel_onset(std::span<const OdeState> states, double threshold = 1e-3);

}  // namespace gelkit
