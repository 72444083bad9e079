#pragma once

// Thin RAII layer over the gelkit C API for the harness and the CLI.

#include <gelkit/gelkit.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace harness {

/// Failure reported by the library or by harness validation. `config_error`
/// selects exit code 1 (bad input) rather than 2 (runtime failure).
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, bool config_error)
      : std::runtime_error(what), config_error_(config_error) {}
  bool config_error() const { return config_error_; }

 private:
  bool config_error_;
};

inline Error config_error(const std::string& what) { return Error(what, true); }

inline void check(gk_status status, const char* call) {
  if (status == GK_OK) return;
  const bool bad_input = status == GK_ERR_CONFIG || status == GK_ERR_DOMAIN ||
                         status == GK_ERR_RANGE || status == GK_ERR_NULL;
  std::string where(call);
  where = where.substr(0, where.find('('));
  throw Error(where + ": " + gk_status_name(status) + ": " + gk_last_error(), bad_input);
}

#define GK_CHECK(call) ::harness::check((call), #call)

struct KernelDeleter {
  void operator()(gk_kernel* p) const { gk_kernel_destroy(p); }
};
struct ConfigDeleter {
  void operator()(gk_sim_config* p) const { gk_sim_config_destroy(p); }
};
struct EnsembleDeleter {
  void operator()(gk_ensemble* p) const { gk_ensemble_destroy(p); }
};
struct OdeDeleter {
  void operator()(gk_ode_solution* p) const { gk_ode_solution_destroy(p); }
};

using KernelHandle = std::unique_ptr<gk_kernel, KernelDeleter>;
using ConfigHandle = std::unique_ptr<gk_sim_config, ConfigDeleter>;
using OdeHandle = std::unique_ptr<gk_ode_solution, OdeDeleter>;

inline KernelHandle make_kernel(const std::string& family, double alpha) {
  gk_kernel* k = nullptr;
  GK_CHECK(gk_kernel_create_named(family.c_str(), alpha, &k));
  return KernelHandle(k);
}

/// Read-only view of a finished ensemble.
class Ensemble {
 public:
  explicit Ensemble(gk_ensemble* raw) : raw_(raw) {
    GK_CHECK(gk_ensemble_shape(raw_.get(), &replicas_, &observables_, &times_, &integrals_));
  }

  std::size_t replicas() const { return replicas_; }
  std::size_t observables() const { return observables_; }
  std::size_t times() const { return times_; }
  std::size_t integrals() const { return integrals_; }

  double time(std::size_t g) const {
    double t = 0.0;
    GK_CHECK(gk_ensemble_time(raw_.get(), g, &t));
    return t;
  }
  std::string name(std::size_t k) const {
    const char* s = nullptr;
    GK_CHECK(gk_ensemble_observable_name(raw_.get(), k, &s));
    return s;
  }
  double value(std::size_t r, std::size_t k, std::size_t g) const {
    double v = 0.0;
    GK_CHECK(gk_ensemble_value(raw_.get(), r, k, g, &v));
    return v;
  }
  std::pair<double, double> summary(std::size_t k, std::size_t g) const {
    double mean = 0.0, se = 0.0;
    GK_CHECK(gk_ensemble_summary(raw_.get(), k, g, &mean, &se));
    return {mean, se};
  }
  double integral(std::size_t r, std::size_t q) const {
    double v = 0.0;
    GK_CHECK(gk_ensemble_integral(raw_.get(), r, q, &v));
    return v;
  }
  std::pair<double, double> integral_summary(std::size_t q) const {
    double mean = 0.0, se = 0.0;
    GK_CHECK(gk_ensemble_integral_summary(raw_.get(), q, &mean, &se));
    return {mean, se};
  }
  std::vector<double> inert_times(std::size_t r) const {
    const double* p = nullptr;
    std::size_t n = 0;
    GK_CHECK(gk_ensemble_inert_times(raw_.get(), r, &p, &n));
    return std::vector<double>(p, p + n);
  }
  const gk_ensemble* raw() const { return raw_.get(); }

 private:
  std::unique_ptr<gk_ensemble, EnsembleDeleter> raw_;
  std::size_t replicas_ = 0, observables_ = 0, times_ = 0, integrals_ = 0;
};

}  // namespace harness
