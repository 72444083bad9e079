#include "gelkit/gelkit.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "gelkit/errors.hpp"
#include "gelkit/kernel.hpp"
#include "gelkit/reference.hpp"
#include "gelkit/simulate.hpp"
#include "gelkit/system.hpp"

struct gk_kernel {
  gelkit::KernelSpec spec;
};

struct gk_system {
  gelkit::ParticleSystem sys;
  gelkit::Rng rng{0};
};

struct gk_sim_config {
  gelkit::SimConfig config;
};

struct gk_ensemble {
  gelkit::EnsembleResult result;
  std::vector<std::string> names;
};

struct gk_ode_solution {
  std::vector<gelkit::OdeState> states;
  std::size_t k_max;
};

namespace {

thread_local std::string g_last_error;

gk_status fail(gk_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs f, translating exceptions into status codes.
template <typename F>
gk_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return GK_OK;
  } catch (const gelkit::ConfigError& e) {
    return fail(GK_ERR_CONFIG, e.what());
  } catch (const gelkit::DomainError& e) {
    return fail(GK_ERR_DOMAIN, e.what());
  } catch (const gelkit::LogicError& e) {
    return fail(GK_ERR_LOGIC, e.what());
  } catch (const std::out_of_range& e) {
    return fail(GK_ERR_RANGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GK_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(GK_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(GK_ERR_RUNTIME, "unknown error");
  }
}

#define GK_REQUIRE(ptr)                                                  \
  do {                                                                   \
    if ((ptr) == nullptr) return fail(GK_ERR_NULL, #ptr " is NULL");     \
  } while (0)

gelkit::Cutoff to_cutoff(double a) {
  return std::isinf(a) && a > 0 ? gelkit::Cutoff::none() : gelkit::Cutoff::at(a);
}

gelkit::Model to_model(gk_model model) {
  switch (model) {
    case GK_MODEL_SMOLUCHOWSKI:
      return gelkit::Model::Smoluchowski;
    case GK_MODEL_FLORY:
      return gelkit::Model::Flory;
  }
  throw gelkit::ConfigError("unknown model");
}

template <typename T>
const T& at(const std::vector<T>& v, std::size_t i) {
  if (i >= v.size()) throw std::out_of_range("index " + std::to_string(i) + " out of range");
  return v[i];
}

}  // namespace

extern "C" {

const char* gk_version(void) { return "1.0.0"; }

const char* gk_last_error(void) { return g_last_error.c_str(); }

const char* gk_status_name(gk_status status) {
  switch (status) {
    case GK_OK:
      return "ok";
    case GK_ERR_CONFIG:
      return "config error";
    case GK_ERR_DOMAIN:
      return "domain error";
    case GK_ERR_LOGIC:
      return "logic error";
    case GK_ERR_RUNTIME:
      return "runtime error";
    case GK_ERR_NULL:
      return "null argument";
    case GK_ERR_RANGE:
      return "index out of range";
  }
  return "unknown status";
}

// ---- kernels ---------------------------------------------------------------

gk_status gk_kernel_create(gk_kernel_family family, double alpha, gk_kernel** out) {
  GK_REQUIRE(out);
  return guarded([&] {
    gelkit::KernelSpec spec = gelkit::KernelSpec::multiplicative();
    switch (family) {
      case GK_KERNEL_MULTIPLICATIVE:
        break;
      case GK_KERNEL_SYMMETRIC_ALPHA:
        spec = gelkit::KernelSpec::symmetric_alpha(alpha);
        break;
      case GK_KERNEL_ALDOUS:
        spec = gelkit::KernelSpec::aldous(alpha);
        break;
      default:
        throw gelkit::ConfigError("unknown kernel family");
    }
    *out = new gk_kernel{spec};
  });
}

gk_status gk_kernel_create_named(const char* family, double alpha, gk_kernel** out) {
  GK_REQUIRE(family);
  GK_REQUIRE(out);
  return guarded([&] {
    const auto fam = gelkit::parse_kernel_family(family);
    const double a = fam == gelkit::KernelFamily::Multiplicative ? 1.0 : alpha;
    *out = new gk_kernel{gelkit::KernelSpec::make(fam, a)};
  });
}

void gk_kernel_destroy(gk_kernel* kernel) { delete kernel; }

gk_status gk_kernel_info(const gk_kernel* kernel, gk_kernel_family* family, double* alpha,
                         double* c_lower, double* c_upper) {
  GK_REQUIRE(kernel);
  if (family) *family = static_cast<gk_kernel_family>(kernel->spec.family());
  if (alpha) *alpha = kernel->spec.alpha();
  if (c_lower) *c_lower = kernel->spec.c_lower();
  if (c_upper) *c_upper = kernel->spec.c_upper();
  return GK_OK;
}

gk_status gk_kernel_evaluate(const gk_kernel* kernel, double x, double y, double* out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] { *out = kernel->spec.evaluate(x, y); });
}

gk_status gk_kernel_evaluate_cutoff(const gk_kernel* kernel, double cutoff, double x, double y,
                                    double* out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::evaluate_cutoff(kernel->spec, to_cutoff(cutoff), x, y); });
}

gk_status gk_kernel_limit(const gk_kernel* kernel, double x, double* out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] { *out = kernel->spec.limit(x); });
}

gk_status gk_kernel_majorant(const gk_kernel* kernel, double x, double y, double* out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] { *out = kernel->spec.majorant(x, y); });
}

// ---- particle systems ------------------------------------------------------

gk_status gk_system_create_monodisperse(size_t n, double cutoff, double alpha, gk_system** out) {
  GK_REQUIRE(out);
  return guarded([&] {
    *out = new gk_system{gelkit::ParticleSystem::monodisperse(n, to_cutoff(cutoff), alpha)};
  });
}

gk_status gk_system_create(const double* masses, size_t count, double cutoff, double alpha,
                           gk_system** out) {
  GK_REQUIRE(out);
  if (count > 0) GK_REQUIRE(masses);
  return guarded([&] {
    *out = new gk_system{gelkit::ParticleSystem::from_masses(
        std::span<const double>(masses, count), to_cutoff(cutoff), alpha)};
  });
}

void gk_system_destroy(gk_system* system) { delete system; }

gk_status gk_system_counts(const gk_system* system, size_t* active, size_t* inert) {
  GK_REQUIRE(system);
  if (active) *active = system->sys.active_count();
  if (inert) *inert = system->sys.inert_count();
  return GK_OK;
}

gk_status gk_system_total_mass(const gk_system* system, double* out) {
  GK_REQUIRE(system);
  GK_REQUIRE(out);
  *out = system->sys.total_mass();
  return GK_OK;
}

gk_status gk_system_largest(const gk_system* system, double* first, double* second) {
  GK_REQUIRE(system);
  if (first) *first = system->sys.largest();
  if (second) *second = system->sys.second_largest();
  return GK_OK;
}

gk_status gk_system_observe(const gk_system* system, const char* spec, double* out) {
  GK_REQUIRE(system);
  GK_REQUIRE(spec);
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::observe(system->sys, gelkit::ObservableSpec::parse(spec)); });
}

gk_status gk_system_total_rate(const gk_system* system, const gk_kernel* kernel, double* out) {
  GK_REQUIRE(system);
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::total_rate_naive(system->sys, kernel->spec); });
}

gk_status gk_system_seed(gk_system* system, uint64_t seed) {
  GK_REQUIRE(system);
  system->rng = gelkit::Rng(seed);
  return GK_OK;
}

gk_status gk_system_step(gk_system* system, const gk_kernel* kernel, double t_now, double* t_next,
                         int* absorbed) {
  GK_REQUIRE(system);
  GK_REQUIRE(kernel);
  GK_REQUIRE(t_next);
  GK_REQUIRE(absorbed);
  return guarded([&] {
    const auto r = gelkit::step(system->sys, kernel->spec, system->rng, t_now);
    *t_next = r.time;
    *absorbed = r.absorbed ? 1 : 0;
  });
}

// ---- simulation ------------------------------------------------------------

gk_status gk_sim_config_create(const gk_kernel* kernel, size_t n, gk_sim_config** out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] {
    auto cfg = std::make_unique<gk_sim_config>();
    cfg->config.kernel = kernel->spec;
    cfg->config.n = n;
    *out = cfg.release();
  });
}

void gk_sim_config_destroy(gk_sim_config* config) { delete config; }

gk_status gk_sim_config_set_masses(gk_sim_config* config, const double* masses, size_t count) {
  GK_REQUIRE(config);
  if (count > 0) GK_REQUIRE(masses);
  return guarded([&] {
    config->config.initial_masses.assign(masses, masses + count);
    if (count > 0) config->config.n = count;
  });
}

gk_status gk_sim_config_set_cutoff(gk_sim_config* config, gk_cutoff_kind kind, double value) {
  GK_REQUIRE(config);
  return guarded([&] {
    switch (kind) {
      case GK_CUTOFF_NONE:
        config->config.cutoff = gelkit::CutoffMode::none();
        break;
      case GK_CUTOFF_ABSOLUTE:
        config->config.cutoff = gelkit::CutoffMode::absolute(value);
        break;
      case GK_CUTOFF_FRACTION:
        config->config.cutoff = gelkit::CutoffMode::fraction_of_mass(value);
        break;
      default:
        throw gelkit::ConfigError("unknown cutoff kind");
    }
  });
}

gk_status gk_sim_config_set_tmax(gk_sim_config* config, double t_max) {
  GK_REQUIRE(config);
  config->config.t_max = t_max;
  return GK_OK;
}

gk_status gk_sim_config_set_grid(gk_sim_config* config, const double* times, size_t count) {
  GK_REQUIRE(config);
  if (count > 0) GK_REQUIRE(times);
  return guarded([&] { config->config.obs_grid.assign(times, times + count); });
}

gk_status gk_sim_config_set_seed(gk_sim_config* config, uint64_t seed) {
  GK_REQUIRE(config);
  config->config.seed = seed;
  return GK_OK;
}

gk_status gk_sim_config_set_replicas(gk_sim_config* config, size_t replicas) {
  GK_REQUIRE(config);
  config->config.replicas = replicas;
  return GK_OK;
}

gk_status gk_sim_config_set_threads(gk_sim_config* config, unsigned threads) {
  GK_REQUIRE(config);
  config->config.threads = threads;
  return GK_OK;
}

gk_status gk_sim_config_set_clock(gk_sim_config* config, gk_clock_mode mode) {
  GK_REQUIRE(config);
  return guarded([&] {
    switch (mode) {
      case GK_CLOCK_AUTO:
        config->config.clock = gelkit::ClockMode::Auto;
        break;
      case GK_CLOCK_EXACT_PRODUCT:
        config->config.clock = gelkit::ClockMode::ExactProduct;
        break;
      case GK_CLOCK_THINNING:
        config->config.clock = gelkit::ClockMode::Thinning;
        break;
      default:
        throw gelkit::ConfigError("unknown clock mode");
    }
  });
}

gk_status gk_sim_config_set_record_events(gk_sim_config* config, int enabled) {
  GK_REQUIRE(config);
  config->config.record_events = enabled != 0;
  return GK_OK;
}

gk_status gk_sim_config_set_record_snapshots(gk_sim_config* config, int enabled) {
  GK_REQUIRE(config);
  config->config.record_snapshots = enabled != 0;
  return GK_OK;
}

gk_status gk_sim_config_add_observable(gk_sim_config* config, const char* spec) {
  GK_REQUIRE(config);
  GK_REQUIRE(spec);
  return guarded([&] { config->config.observables.push_back(gelkit::ObservableSpec::parse(spec)); });
}

gk_status gk_sim_config_add_integral(gk_sim_config* config, const char* spec, double from,
                                     double to) {
  GK_REQUIRE(config);
  GK_REQUIRE(spec);
  return guarded([&] {
    if (!(from < to)) throw gelkit::ConfigError("time integral needs from < to");
    config->config.integrals.push_back({gelkit::ObservableSpec::parse(spec), from, to});
  });
}

gk_status gk_sim_config_validate(const gk_sim_config* config) {
  GK_REQUIRE(config);
  return guarded([&] { config->config.validate(); });
}

gk_status gk_simulate(const gk_sim_config* config, gk_ensemble** out) {
  GK_REQUIRE(config);
  GK_REQUIRE(out);
  return guarded([&] {
    auto ens = std::make_unique<gk_ensemble>();
    ens->result = gelkit::run_ensemble(config->config);
    for (const auto& obs : config->config.observables) ens->names.push_back(obs.name());
    *out = ens.release();
  });
}

void gk_ensemble_destroy(gk_ensemble* ensemble) { delete ensemble; }

gk_status gk_ensemble_shape(const gk_ensemble* ensemble, size_t* replicas, size_t* observables,
                            size_t* times, size_t* integrals) {
  GK_REQUIRE(ensemble);
  const auto& r = ensemble->result;
  if (replicas) *replicas = r.replicas.size();
  if (observables) *observables = r.observables.size();
  if (times) *times = r.replicas.empty() ? 0 : r.replicas.front().times.size();
  if (integrals) *integrals = r.integrals.size();
  return GK_OK;
}

gk_status gk_ensemble_time(const gk_ensemble* ensemble, size_t time_index, double* out) {
  GK_REQUIRE(ensemble);
  GK_REQUIRE(out);
  return guarded([&] { *out = at(at(ensemble->result.replicas, 0).times, time_index); });
}

gk_status gk_ensemble_observable_name(const gk_ensemble* ensemble, size_t observable,
                                      const char** out) {
  GK_REQUIRE(ensemble);
  GK_REQUIRE(out);
  return guarded([&] { *out = at(ensemble->names, observable).c_str(); });
}

gk_status gk_ensemble_value(const gk_ensemble* ensemble, size_t replica, size_t observable,
                            size_t time_index, double* out) {
  GK_REQUIRE(ensemble);
  GK_REQUIRE(out);
  return guarded([&] {
    *out = at(at(at(ensemble->result.replicas, replica).values, observable), time_index);
  });
}

gk_status gk_ensemble_summary(const gk_ensemble* ensemble, size_t observable, size_t time_index,
                              double* mean, double* se) {
  GK_REQUIRE(ensemble);
  return guarded([&] {
    const auto& s = at(at(ensemble->result.observables, observable), time_index);
    if (mean) *mean = s.mean;
    if (se) *se = s.se;
  });
}

gk_status gk_ensemble_integral(const gk_ensemble* ensemble, size_t replica, size_t integral,
                               double* out) {
  GK_REQUIRE(ensemble);
  GK_REQUIRE(out);
  return guarded([&] { *out = at(at(ensemble->result.replicas, replica).integrals, integral); });
}

gk_status gk_ensemble_integral_summary(const gk_ensemble* ensemble, size_t integral, double* mean,
                                       double* se) {
  GK_REQUIRE(ensemble);
  return guarded([&] {
    const auto& s = at(ensemble->result.integrals, integral);
    if (mean) *mean = s.mean;
    if (se) *se = s.se;
  });
}

gk_status gk_ensemble_replica_stats(const gk_ensemble* ensemble, size_t replica,
                                    uint64_t* events, uint64_t* proposals, int* absorbed,
                                    double* wall_seconds) {
  GK_REQUIRE(ensemble);
  return guarded([&] {
    const auto& t = at(ensemble->result.replicas, replica);
    if (events) *events = t.event_count;
    if (proposals) *proposals = t.proposals;
    if (absorbed) *absorbed = t.absorbed ? 1 : 0;
    if (wall_seconds) *wall_seconds = t.wall_seconds;
  });
}

gk_status gk_ensemble_inert_times(const gk_ensemble* ensemble, size_t replica,
                                  const double** times, size_t* count) {
  GK_REQUIRE(ensemble);
  GK_REQUIRE(times);
  GK_REQUIRE(count);
  return guarded([&] {
    const auto& t = at(ensemble->result.replicas, replica);
    *times = t.inert_times.data();
    *count = t.inert_times.size();
  });
}

gk_status gk_ensemble_events(const gk_ensemble* ensemble, size_t replica, size_t* count) {
  GK_REQUIRE(ensemble);
  GK_REQUIRE(count);
  return guarded([&] { *count = at(ensemble->result.replicas, replica).events.size(); });
}

gk_status gk_ensemble_event(const gk_ensemble* ensemble, size_t replica, size_t index,
                            double* time, double* first_mass, double* second_mass) {
  GK_REQUIRE(ensemble);
  return guarded([&] {
    const auto& e = at(at(ensemble->result.replicas, replica).events, index);
    if (time) *time = e.time;
    if (first_mass) *first_mass = e.first_mass;
    if (second_mass) *second_mass = e.second_mass;
  });
}

gk_status gk_ensemble_snapshot(const gk_ensemble* ensemble, size_t replica, size_t time_index,
                               const double** masses, const uint64_t** counts, size_t* bins) {
  GK_REQUIRE(ensemble);
  GK_REQUIRE(masses);
  GK_REQUIRE(counts);
  GK_REQUIRE(bins);
  return guarded([&] {
    const auto& h = at(at(ensemble->result.replicas, replica).snapshots, time_index);
    *masses = h.masses.data();
    *counts = h.counts.data();
    *bins = h.masses.size();
  });
}

// ---- reference solutions ---------------------------------------------------

gk_status gk_explicit_c(gk_model model, double t, int64_t k, double* out) {
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::explicit_c(to_model(model), t, k); });
}

gk_status gk_t_star(double t, double* out) {
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::t_star(t); });
}

gk_status gk_flory_mass(double t, double* out) {
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::flory_mass(t); });
}

gk_status gk_explicit_mass(gk_model model, double t, double* out) {
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::explicit_mass(to_model(model), t); });
}

gk_status gk_t1(double gamma, double* out) {
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::T1(gamma); });
}

gk_status gk_series_mass(gk_model model, double t, int64_t k_max, double* out) {
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::series_mass(to_model(model), t, k_max); });
}

gk_status gk_gel_time_upper_bound(const gk_kernel* kernel, double mu0_moment, double* out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::gel_time_upper_bound(kernel->spec, mu0_moment); });
}

gk_status gk_pair_tail_constant(const gk_kernel* kernel, double* out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] { *out = gelkit::pair_tail_constant(kernel->spec); });
}

gk_status gk_ode_solve(gk_model model, const gk_kernel* kernel, size_t k_max, double t_max,
                       double dt, size_t record_every, gk_ode_solution** out) {
  GK_REQUIRE(kernel);
  GK_REQUIRE(out);
  return guarded([&] {
    gelkit::OdeOptions opts{k_max, t_max, dt, record_every};
    auto sol = std::make_unique<gk_ode_solution>();
    sol->states = gelkit::ode_solve(to_model(model), kernel->spec, opts);
    sol->k_max = k_max;
    *out = sol.release();
  });
}

void gk_ode_solution_destroy(gk_ode_solution* solution) { delete solution; }

gk_status gk_ode_solution_size(const gk_ode_solution* solution, size_t* states, size_t* k_max) {
  GK_REQUIRE(solution);
  if (states) *states = solution->states.size();
  if (k_max) *k_max = solution->k_max;
  return GK_OK;
}

gk_status gk_ode_solution_state(const gk_ode_solution* solution, size_t index, double* t,
                                double* gel_mass) {
  GK_REQUIRE(solution);
  return guarded([&] {
    const auto& s = at(solution->states, index);
    if (t) *t = s.t;
    if (gel_mass) *gel_mass = s.gel_mass;
  });
}

gk_status gk_ode_solution_conc(const gk_ode_solution* solution, size_t index, size_t k,
                               double* out) {
  GK_REQUIRE(solution);
  GK_REQUIRE(out);
  return guarded([&] {
    const auto& s = at(solution->states, index);
    if (k < 1) throw std::out_of_range("size k starts at 1");
    *out = at(s.c, k - 1);
  });
}

}  // extern "C"
