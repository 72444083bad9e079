#include "gelkit/reference.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gelkit/errors.hpp"

namespace gelkit {

namespace {

void require_k(std::int64_t k) {
  if (k < 1) throw DomainError("cluster size k must be at least 1");
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and non-negative");
}

// log(k^(k-2) / k!)
double log_tree_weight(std::int64_t k) {
  const double kd = static_cast<double>(k);
  return (kd - 2.0) * std::log(kd) - std::lgamma(kd + 1.0);
}

}  // namespace

std::string_view to_string(Model model) {
  return model == Model::Flory ? "flory" : "smoluchowski";
}

Model parse_model(std::string_view name) {
  if (name == "flory") return Model::Flory;
  if (name == "smoluchowski" || name == "smolu") return Model::Smoluchowski;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

double flory_c(double t, std::int64_t k) {
  require_k(k);
  require_time(t);
  if (t == 0.0) return k == 1 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(log_tree_weight(k) + (kd - 1.0) * std::log(t) - kd * t);
}

double smoluchowski_c(double t, std::int64_t k) {
  require_k(k);
  require_time(t);
  if (t <= 1.0) return flory_c(t, k);
  return std::exp(log_tree_weight(k) - std::log(t) - static_cast<double>(k));
}

double explicit_c(Model model, double t, std::int64_t k) {
  return model == Model::Flory ? flory_c(t, k) : smoluchowski_c(t, k);
}

double t_star(double t) {
  if (!(t > 1.0) || !std::isfinite(t)) throw DomainError("t_star needs t > 1");
  // log x - x is increasing on (0,1); compare in log space so large t does
  // not underflow t e^-t.
  const double target = std::log(t) - t;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::log(mid) - mid < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double flory_mass(double t) {
  require_time(t);
  return t <= 1.0 ? 1.0 : t_star(t) / t;
}

double explicit_mass(Model model, double t) {
  require_time(t);
  if (t <= 1.0) return 1.0;
  // sum_k k^(k-1) e^-k / k! = 1, so the Smoluchowski moment is 1/t.
  return model == Model::Flory ? t_star(t) / t : 1.0 / t;
}

double T1(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("T1 needs gamma in (0,1)");
  return -std::log1p(-gamma) / gamma;
}

double series_mass(Model model, double t, std::int64_t k_max) {
  require_time(t);
  require_k(k_max);
  double sum = 0.0;
  for (std::int64_t k = 1; k <= k_max; ++k) sum += static_cast<double>(k) * explicit_c(model, t, k);
  return sum;
}

double gel_time_upper_bound(const KernelSpec& kernel, double mu0_moment) {
  if (!(mu0_moment > 0.0) || !std::isfinite(mu0_moment)) {
    throw DomainError("the x^(1-alpha) moment of the initial data must be positive");
  }
  return mu0_moment / ((1.0 - std::exp2(-kernel.alpha())) * kernel.c_lower());
}

double pair_tail_constant(const KernelSpec& kernel) {
  return 1.0 / (kernel.c_lower() * (1.0 - std::exp2(-kernel.alpha())));
}

// ---------------------------------------------------------------------------

CoagulationOde::CoagulationOde(Model model, const KernelSpec& kernel, std::size_t k_max)
    : model_(model), k_max_(k_max) {
  if (k_max < 2) throw ConfigError("k_max must be at least 2");
  kernel_.resize(k_max * k_max);
  limit_.resize(k_max);
  for (std::size_t i = 1; i <= k_max; ++i) {
    limit_[i - 1] = kernel.limit(static_cast<double>(i));
    for (std::size_t j = i; j <= k_max; ++j) {
      const double v = kernel.evaluate(static_cast<double>(i), static_cast<double>(j));
      kernel_[(i - 1) * k_max + (j - 1)] = v;
      kernel_[(j - 1) * k_max + (i - 1)] = v;
    }
  }
}

OdeState CoagulationOde::initial_state() const {
  OdeState s;
  s.c.assign(k_max_, 0.0);
  s.c[0] = 1.0;
  return s;
}

void CoagulationOde::rhs(std::span<const double> c, std::span<double> out) const {
  const std::size_t n = k_max_;
  double gel = 1.0;
  for (std::size_t k = 0; k < n; ++k) gel -= static_cast<double>(k + 1) * c[k];

  for (std::size_t k = 0; k < n; ++k) {
    const double* row = &kernel_[k * n];
    // gain: sizes i+1 and (k-i)-1+1 summing to k+1
    double gain = 0.0;
    for (std::size_t i = 0; i + 1 <= k; ++i) gain += kernel_[i * n + (k - 1 - i)] * c[i] * c[k - 1 - i];
    double loss = 0.0;
    for (std::size_t j = 0; j < n; ++j) loss += row[j] * c[j];
    double d = 0.5 * gain - c[k] * loss;
    if (model_ == Model::Flory) d -= c[k] * limit_[k] * gel;
    out[k] = d;
  }
}

MassBalance CoagulationOde::mass_balance(std::span<const double> c) const {
  const std::size_t n = k_max_;
  std::vector<double> d(n);
  rhs(c, d);
  MassBalance mb{0.0, 0.0, 0.0};
  double gel = 1.0;
  double weighted_limit = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double size = static_cast<double>(k + 1);
    mb.dmass_dt += size * d[k];
    gel -= size * c[k];
    weighted_limit += size * limit_[k] * c[k];
  }
  if (model_ == Model::Flory) mb.gel_sink = weighted_limit * gel;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n - 1 - i; j < n; ++j) {
      // sizes (i+1) + (j+1) > n
      mb.truncation_flux += 0.5 * static_cast<double>(i + j + 2) * kernel_[i * n + j] * c[i] * c[j];
    }
  }
  return mb;
}

void CoagulationOde::step(OdeState& state, double dt) const {
  const std::size_t n = k_max_;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  rhs(state.c, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = state.c[i] + 0.5 * dt * k1[i];
  rhs(tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = state.c[i] + 0.5 * dt * k2[i];
  rhs(tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = state.c[i] + dt * k3[i];
  rhs(tmp, k4);

  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = state.c[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(v) || std::fabs(v) > 1e6) {
      throw SolverFailure("coagulation ODE blew up at t = " + std::to_string(state.t + dt) +
                          ", size " + std::to_string(i + 1) + " (c = " + std::to_string(v) +
                          "); reduce dt");
    }
    state.c[i] = v;
    mass += static_cast<double>(i + 1) * v;
  }
  state.t += dt;
  state.gel_mass = 1.0 - mass;
}

std::vector<OdeState> ode_solve(Model model, const KernelSpec& kernel, const OdeOptions& options) {
  if (!(options.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(options.t_max >= 0.0) || !std::isfinite(options.t_max)) {
    throw ConfigError("t_max must be finite and non-negative");
  }
  if (options.record_every == 0) throw ConfigError("record_every must be at least 1");
  const CoagulationOde ode(model, kernel, options.k_max);
  const auto steps = static_cast<std::size_t>(std::ceil(options.t_max / options.dt - 1e-9));
  const double h = steps > 0 ? options.t_max / static_cast<double>(steps) : 0.0;

  std::vector<OdeState> out;
  OdeState state = ode.initial_state();
  out.push_back(state);
  for (std::size_t s = 1; s <= steps; ++s) {
    ode.step(state, h);
    state.t = static_cast<double>(s) * h;
    if (s % options.record_every == 0 || s == steps) out.push_back(state);
  }
  return out;
}

double gel_onset(std::span<const OdeState> states, double threshold) {
  for (const auto& s : states)
    if (s.gel_mass > threshold) return s.t;
  return std::numeric_limits<double>::infinity();
}

}  // namespace gelkit
