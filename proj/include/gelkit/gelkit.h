/*
 * gelkit C API: coalescence simulation and coagulation reference solutions.
 *
 * Every fallible call returns a gk_status. On failure, gk_last_error()
 * returns a message for the calling thread, valid until its next gelkit call.
 * Handles are opaque; each *_create has a matching *_destroy that accepts NULL.
 */
#ifndef GELKIT_GELKIT_H
#define GELKIT_GELKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GELKIT_BUILDING)
#    define GK_API __declspec(dllexport)
#  else
#    define GK_API __declspec(dllimport)
#  endif
#else
#  define GK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gk_status {
  GK_OK = 0,
  GK_ERR_CONFIG = 1,   /* invalid configuration or input */
  GK_ERR_DOMAIN = 2,   /* argument outside a function's domain */
  GK_ERR_LOGIC = 3,    /* contract violation */
  GK_ERR_RUNTIME = 4,  /* solver failure or other runtime error */
  GK_ERR_NULL = 5,     /* NULL handle or output pointer */
  GK_ERR_RANGE = 6     /* index out of range */
} gk_status;

typedef enum gk_kernel_family {
  GK_KERNEL_MULTIPLICATIVE = 0,
  GK_KERNEL_SYMMETRIC_ALPHA = 1,
  GK_KERNEL_ALDOUS = 2
} gk_kernel_family;

typedef enum gk_model { GK_MODEL_SMOLUCHOWSKI = 0, GK_MODEL_FLORY = 1 } gk_model;

typedef enum gk_cutoff_kind {
  GK_CUTOFF_NONE = 0,     /* a = total mass */
  GK_CUTOFF_ABSOLUTE = 1, /* a = value */
  GK_CUTOFF_FRACTION = 2  /* a = value * total mass, value in (0,1] */
} gk_cutoff_kind;

typedef enum gk_clock_mode {
  GK_CLOCK_AUTO = 0,
  GK_CLOCK_EXACT_PRODUCT = 1,
  GK_CLOCK_THINNING = 2
} gk_clock_mode;

typedef struct gk_kernel gk_kernel;
typedef struct gk_system gk_system;
typedef struct gk_sim_config gk_sim_config;
typedef struct gk_ensemble gk_ensemble;
typedef struct gk_ode_solution gk_ode_solution;

GK_API const char* gk_version(void);
GK_API const char* gk_last_error(void);
GK_API const char* gk_status_name(gk_status status);

/* ---- kernels ---------------------------------------------------------- */

/* alpha is ignored for the multiplicative kernel (always 1). */
GK_API gk_status gk_kernel_create(gk_kernel_family family, double alpha, gk_kernel** out);
/* family: "multiplicative", "symmetric_alpha" or "aldous". */
GK_API gk_status gk_kernel_create_named(const char* family, double alpha, gk_kernel** out);
GK_API void gk_kernel_destroy(gk_kernel* kernel);
GK_API gk_status gk_kernel_info(const gk_kernel* kernel, gk_kernel_family* family,
                                double* alpha, double* c_lower, double* c_upper);
GK_API gk_status gk_kernel_evaluate(const gk_kernel* kernel, double x, double y, double* out);
/* cutoff: masses above it are inert; pass INFINITY for none. */
GK_API gk_status gk_kernel_evaluate_cutoff(const gk_kernel* kernel, double cutoff, double x,
                                           double y, double* out);
GK_API gk_status gk_kernel_limit(const gk_kernel* kernel, double x, double* out);
GK_API gk_status gk_kernel_majorant(const gk_kernel* kernel, double x, double y, double* out);

/* ---- particle systems ------------------------------------------------- */

GK_API gk_status gk_system_create_monodisperse(size_t n, double cutoff, double alpha,
                                               gk_system** out);
GK_API gk_status gk_system_create(const double* masses, size_t count, double cutoff,
                                  double alpha, gk_system** out);
GK_API void gk_system_destroy(gk_system* system);
GK_API gk_status gk_system_counts(const gk_system* system, size_t* active, size_t* inert);
GK_API gk_status gk_system_total_mass(const gk_system* system, double* out);
GK_API gk_status gk_system_largest(const gk_system* system, double* first, double* second);
/* spec uses the "kind:param[:param2]" form, e.g. "count_at_mass:2". */
GK_API gk_status gk_system_observe(const gk_system* system, const char* spec, double* out);
GK_API gk_status gk_system_total_rate(const gk_system* system, const gk_kernel* kernel,
                                      double* out);
/* Reseeds the system's own random stream (seed 0 at creation). */
GK_API gk_status gk_system_seed(gk_system* system, uint64_t seed);
/* Advances one coalescence from time t_now. *absorbed is set to 1 (and the
 * state left unchanged) when no active pair remains. */
GK_API gk_status gk_system_step(gk_system* system, const gk_kernel* kernel, double t_now,
                                double* t_next, int* absorbed);

/* ---- simulation ------------------------------------------------------- */

GK_API gk_status gk_sim_config_create(const gk_kernel* kernel, size_t n, gk_sim_config** out);
GK_API void gk_sim_config_destroy(gk_sim_config* config);
GK_API gk_status gk_sim_config_set_masses(gk_sim_config* config, const double* masses,
                                          size_t count);
GK_API gk_status gk_sim_config_set_cutoff(gk_sim_config* config, gk_cutoff_kind kind,
                                          double value);
GK_API gk_status gk_sim_config_set_tmax(gk_sim_config* config, double t_max);
GK_API gk_status gk_sim_config_set_grid(gk_sim_config* config, const double* times,
                                        size_t count);
GK_API gk_status gk_sim_config_set_seed(gk_sim_config* config, uint64_t seed);
GK_API gk_status gk_sim_config_set_replicas(gk_sim_config* config, size_t replicas);
GK_API gk_status gk_sim_config_set_threads(gk_sim_config* config, unsigned threads);
GK_API gk_status gk_sim_config_set_clock(gk_sim_config* config, gk_clock_mode mode);
GK_API gk_status gk_sim_config_set_record_events(gk_sim_config* config, int enabled);
GK_API gk_status gk_sim_config_set_record_snapshots(gk_sim_config* config, int enabled);
GK_API gk_status gk_sim_config_add_observable(gk_sim_config* config, const char* spec);
/* Time integral of an observable over [from, to] (to may be INFINITY). */
GK_API gk_status gk_sim_config_add_integral(gk_sim_config* config, const char* spec,
                                            double from, double to);
GK_API gk_status gk_sim_config_validate(const gk_sim_config* config);

GK_API gk_status gk_simulate(const gk_sim_config* config, gk_ensemble** out);
GK_API void gk_ensemble_destroy(gk_ensemble* ensemble);
GK_API gk_status gk_ensemble_shape(const gk_ensemble* ensemble, size_t* replicas,
                                   size_t* observables, size_t* times, size_t* integrals);
GK_API gk_status gk_ensemble_time(const gk_ensemble* ensemble, size_t time_index, double* out);
/* Pointer valid for the ensemble's lifetime. */
GK_API gk_status gk_ensemble_observable_name(const gk_ensemble* ensemble, size_t observable,
                                             const char** out);
GK_API gk_status gk_ensemble_value(const gk_ensemble* ensemble, size_t replica,
                                   size_t observable, size_t time_index, double* out);
GK_API gk_status gk_ensemble_summary(const gk_ensemble* ensemble, size_t observable,
                                     size_t time_index, double* mean, double* se);
GK_API gk_status gk_ensemble_integral(const gk_ensemble* ensemble, size_t replica,
                                      size_t integral, double* out);
GK_API gk_status gk_ensemble_integral_summary(const gk_ensemble* ensemble, size_t integral,
                                              double* mean, double* se);
GK_API gk_status gk_ensemble_replica_stats(const gk_ensemble* ensemble, size_t replica,
                                           uint64_t* events, uint64_t* proposals,
                                           int* absorbed, double* wall_seconds);
GK_API gk_status gk_ensemble_inert_times(const gk_ensemble* ensemble, size_t replica,
                                         const double** times, size_t* count);
/* Event log arrays (recorded only with gk_sim_config_set_record_events). */
GK_API gk_status gk_ensemble_events(const gk_ensemble* ensemble, size_t replica, size_t* count);
GK_API gk_status gk_ensemble_event(const gk_ensemble* ensemble, size_t replica, size_t index,
                                   double* time, double* first_mass, double* second_mass);

/* Mass histogram at a grid time (recorded only with
 * gk_sim_config_set_record_snapshots). Arrays have *bins entries, masses
 * ascending, and stay valid for the ensemble's lifetime. */
GK_API gk_status gk_ensemble_snapshot(const gk_ensemble* ensemble, size_t replica,
                                      size_t time_index, const double** masses,
                                      const uint64_t** counts, size_t* bins);

/* ---- reference solutions ---------------------------------------------- */

GK_API gk_status gk_explicit_c(gk_model model, double t, int64_t k, double* out);
GK_API gk_status gk_t_star(double t, double* out);
GK_API gk_status gk_flory_mass(double t, double* out);
GK_API gk_status gk_explicit_mass(gk_model model, double t, double* out);
GK_API gk_status gk_t1(double gamma, double* out);
GK_API gk_status gk_series_mass(gk_model model, double t, int64_t k_max, double* out);
GK_API gk_status gk_gel_time_upper_bound(const gk_kernel* kernel, double mu0_moment,
                                         double* out);
GK_API gk_status gk_pair_tail_constant(const gk_kernel* kernel, double* out);

GK_API gk_status gk_ode_solve(gk_model model, const gk_kernel* kernel, size_t k_max,
                              double t_max, double dt, size_t record_every,
                              gk_ode_solution** out);
GK_API void gk_ode_solution_destroy(gk_ode_solution* solution);
GK_API gk_status gk_ode_solution_size(const gk_ode_solution* solution, size_t* states,
                                      size_t* k_max);
GK_API gk_status gk_ode_solution_state(const gk_ode_solution* solution, size_t index,
                                       double* t, double* gel_mass);
GK_API gk_status gk_ode_solution_conc(const gk_ode_solution* solution, size_t index, size_t k,
                                      double* out);

#ifdef __cplusplus
}
#endif

#endif /* GELKIT_GELKIT_H */
