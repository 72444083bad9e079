// gelkit command line: simulate, reference, compare, figure, selftest.
//
// Exit codes: 0 success, 1 bad configuration or usage, 2 runtime failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/gk.hpp"
#include "harness/output.hpp"
#include "harness/presets.hpp"
#include "harness/report.hpp"
#include "harness/selftest.hpp"

namespace {

using harness::config_error;

// Opens --out, or falls back to stdout when it is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw config_error("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (file_.fail()) throw harness::Error("failed writing output", false);
  }

 private:
  std::ofstream file_;
};

struct Common {
  std::string preset;
  std::string kernel;
  double alpha = NAN;
  std::size_t n = 0;
  double cutoff = NAN;
  double cutoff_frac = NAN;
  double t_max = NAN;
  std::string grid;
  double dt = 0.01;
  std::size_t k_max = 300;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::string format = "csv";
  std::string config;
};

void add_model_flags(CLI::App* app, Common& c) {
  app->add_option("--kernel", c.kernel, "multiplicative | symmetric_alpha | aldous");
  app->add_option("--alpha", c.alpha, "kernel exponent in (0,1]");
  app->add_option("--n", c.n, "number of unit-mass particles");
  app->add_option("--cutoff", c.cutoff, "absolute cutoff a");
  app->add_option("--cutoff-frac", c.cutoff_frac, "cutoff as a fraction of the total mass");
  app->add_option("--tmax", c.t_max, "final time");
}

void add_run_flags(CLI::App* app, Common& c) {
  app->add_option("--grid", c.grid, "observation times: a:step:b or t1,t2,...");
  app->add_option("--replicas", c.replicas, "independent replicas");
  app->add_option("--seed", c.seed, "base seed")->each([&c](const std::string&) { c.seed_set = true; });
  app->add_option("--out", c.out, "output path (default: stdout)");
}

harness::Overrides overrides_from(const Common& c) {
  harness::Overrides o;
  if (!c.kernel.empty()) o.kernel = c.kernel;
  if (!std::isnan(c.alpha)) o.alpha = c.alpha;
  if (c.n) o.n = c.n;
  if (!std::isnan(c.cutoff)) o.cutoff = c.cutoff;
  if (!std::isnan(c.cutoff_frac)) o.cutoff_frac = c.cutoff_frac;
  if (!std::isnan(c.t_max)) o.t_max = c.t_max;
  if (!c.grid.empty()) o.grid = harness::parse_grid(c.grid);
  if (c.replicas) o.replicas = c.replicas;
  if (c.seed_set) o.seed = c.seed;
  return o;
}

std::size_t replicas_or_default(const Common& c) {
  return c.replicas ? c.replicas : harness::kDefaultReplicas;
}

std::vector<double> grid_or_empty(const Common& c) {
  return c.grid.empty() ? std::vector<double>{} : harness::parse_grid(c.grid);
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::vector<std::string> observables;
  bool summary = false;
  std::string events;
  std::string snapshots;
};

int cmd_simulate(const Common& c, const SimulateArgs& s) {
  harness::RunConfig cfg;
  if (!c.config.empty()) {
    cfg = harness::load_config(c.config);
  } else if (!c.preset.empty()) {
    cfg = harness::preset_config(harness::find_preset(c.preset), c.seed, harness::kDefaultReplicas);
  } else {
    cfg.n = 1000;
    cfg.t_max = 3.0;
  }
  harness::apply(cfg, overrides_from(c));
  if (!s.observables.empty()) cfg.observables = s.observables;
  if (cfg.observables.empty()) cfg.observables = {"count_at_mass:2", "mass_fraction_largest"};
  if (cfg.obs_grid.empty()) {
    for (int i = 0; i <= 60; ++i) cfg.obs_grid.push_back(cfg.t_max * i / 60.0);
  }

  harness::BuildOptions opts;
  opts.record_events = !s.events.empty();
  opts.record_snapshots = !s.snapshots.empty();
  const auto ens = harness::simulate(cfg, opts);

  Sink out(c.out);
  if (s.summary) {
    harness::write_ensemble_csv(out.stream(), ens);
  } else {
    harness::write_trajectory_csv(out.stream(), ens);
  }
  out.close();
  if (!s.events.empty()) {
    Sink ev(s.events);
    harness::write_event_log(ev.stream(), ens, 0);
    ev.close();
  }
  if (!s.snapshots.empty()) {
    Sink sn(s.snapshots);
    harness::write_snapshots(sn.stream(), ens, 0);
    sn.close();
  }
  if (ens.integrals() > 0) {
    for (std::size_t q = 0; q < ens.integrals(); ++q) {
      const auto [mean, se] = ens.integral_summary(q);
      std::cerr << "integral " << q << ": " << harness::fmt(mean) << " +- " << harness::fmt(se)
                << "\n";
    }
  }
  return 0;
}

// ---- reference ---------------------------------------------------------------

struct ReferenceArgs {
  std::string model = "flory";
  std::int64_t k = 2;
  bool moments = false;
  bool ode = false;
  double ode_dt = 1e-3;
};

gk_model parse_model(const std::string& name) {
  if (name == "flory") return GK_MODEL_FLORY;
  if (name == "smoluchowski" || name == "smolu") return GK_MODEL_SMOLUCHOWSKI;
  throw config_error("unknown model '" + name + "' (expected flory or smoluchowski)");
}

int cmd_reference(const Common& c, const ReferenceArgs& r) {
  const gk_model model = parse_model(r.model);
  const double t_max = std::isnan(c.t_max) ? 3.0 : c.t_max;
  if (!(c.dt > 0.0)) throw config_error("--dt must be positive");
  if (!(t_max >= 0.0)) throw config_error("--tmax must be non-negative");
  if (r.k < 1) throw config_error("--k must be at least 1");
  const auto rows = static_cast<std::size_t>(std::floor(t_max / c.dt + 1e-9));

  Sink sink(c.out);
  auto& out = sink.stream();
  if (r.ode) {
    const auto kernel = harness::make_kernel(c.kernel.empty() ? "multiplicative" : c.kernel,
                                             std::isnan(c.alpha) ? 1.0 : c.alpha);
    const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(c.dt / r.ode_dt)));
    gk_ode_solution* raw = nullptr;
    GK_CHECK(gk_ode_solve(model, kernel.get(), c.k_max, t_max, r.ode_dt, every, &raw));
    const harness::OdeHandle sol(raw);
    std::size_t states = 0, k_max = 0;
    GK_CHECK(gk_ode_solution_size(raw, &states, &k_max));
    if (static_cast<std::size_t>(r.k) > k_max) throw config_error("--k exceeds --kmax");
    out << "t,ode_c,gel_mass\n";
    for (std::size_t i = 0; i < states; ++i) {
      double t = 0, gel = 0, v = 0;
      GK_CHECK(gk_ode_solution_state(raw, i, &t, &gel));
      GK_CHECK(gk_ode_solution_conc(raw, i, static_cast<std::size_t>(r.k), &v));
      out << harness::fmt(t) << ',' << harness::fmt(v) << ',' << harness::fmt(gel) << '\n';
    }
  } else if (r.moments) {
    out << "t,mass,gel_mass\n";
    for (std::size_t i = 0; i <= rows; ++i) {
      const double t = static_cast<double>(i) * c.dt;
      double mass = 0;
      GK_CHECK(gk_explicit_mass(model, t, &mass));
      out << harness::fmt(t) << ',' << harness::fmt(mass) << ',' << harness::fmt(1.0 - mass) << '\n';
    }
  } else {
    out << "t,c\n";
    for (std::size_t i = 0; i <= rows; ++i) {
      const double t = static_cast<double>(i) * c.dt;
      double v = 0;
      GK_CHECK(gk_explicit_c(model, t, r.k, &v));
      out << harness::fmt(t) << ',' << harness::fmt(v) << '\n';
    }
  }
  sink.close();
  return 0;
}

// ---- compare / figure ----------------------------------------------------------

struct CompareArgs {
  std::vector<double> times;
  bool giant = false;
};

int cmd_compare(const Common& c, const CompareArgs& a) {
  const std::size_t replicas = replicas_or_default(c);
  if (a.giant) {
    const std::size_t n = c.n ? c.n : 10000;
    const auto times = a.times.empty() ? std::vector<double>{1.5, 2.0, 3.0} : a.times;
    const auto report = harness::giant_particle_report(n, replicas, times, c.seed);
    harness::print_giant(std::cout, report);
    return 0;
  }
  if (c.preset.empty()) throw config_error("compare needs --preset (or --giant)");
  const auto& preset = harness::find_preset(c.preset);
  const auto grid = a.times.empty() ? grid_or_empty(c) : a.times;
  const auto report = harness::run_preset(preset, c.seed, replicas, grid);
  harness::print_compare(std::cout, report);
  if (!c.out.empty()) {
    Sink sink(c.out);
    harness::write_compare_csv(sink.stream(), report);
    sink.close();
  }
  return 0;
}

int cmd_figure(const Common& c) {
  if (c.preset.empty()) throw config_error("figure needs --preset");
  const auto& preset = harness::find_preset(c.preset);
  const auto report = harness::run_preset(preset, c.seed, replicas_or_default(c), grid_or_empty(c));
  Sink sink(c.out);
  if (c.format == "svg") {
    harness::write_figure_svg(sink.stream(), report);
  } else {
    harness::write_figure_csv(sink.stream(), report);
  }
  sink.close();
  return 0;
}

int cmd_selftest(const Common& c, bool include_slow) {
  const auto checks = harness::run_selftest(include_slow, c.seed_set ? c.seed : 7, replicas_or_default(c));
  return harness::print_checks(std::cout, checks) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gelkit: stochastic coagulation with a cutoff, and its reference solutions"};
  app.require_subcommand(1);
  Common c;

  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo ensemble");
  SimulateArgs sim_args;
  sim->add_option("--config", c.config, "JSON run description")->check(CLI::ExistingFile);
  sim->add_option("--preset", c.preset, "start from a preset (fig1..fig5)");
  add_model_flags(sim, c);
  add_run_flags(sim, c);
  sim->add_option("--observable", sim_args.observables, "observable, e.g. count_at_mass:2 (repeatable)");
  sim->add_flag("--summary", sim_args.summary, "write mean and SE per observable instead of every replica");
  sim->add_option("--events", sim_args.events, "write replica 0's merge log here");
  sim->add_option("--snapshots", sim_args.snapshots, "write replica 0's mass histograms here");

  auto* ref = app.add_subcommand("reference", "tabulate explicit or ODE reference solutions");
  ReferenceArgs ref_args;
  ref->add_option("--model", ref_args.model, "flory | smoluchowski");
  ref->add_option("--k", ref_args.k, "particle size");
  ref->add_flag("--moments", ref_args.moments, "tabulate total mass and gel mass instead");
  ref->add_flag("--ode", ref_args.ode, "integrate the truncated equation instead");
  ref->add_option("--ode-dt", ref_args.ode_dt, "ODE step (rows are still every --dt)");
  ref->add_option("--dt", c.dt, "table spacing");
  ref->add_option("--kmax", c.k_max, "ODE truncation size");
  ref->add_option("--kernel", c.kernel, "kernel for --ode");
  ref->add_option("--alpha", c.alpha, "kernel exponent for --ode");
  ref->add_option("--tmax", c.t_max, "final time");
  ref->add_option("--out", c.out, "output path (default: stdout)");

  auto* cmp = app.add_subcommand("compare", "Monte Carlo against both reference solutions");
  CompareArgs cmp_args;
  cmp->add_option("--preset", c.preset, "fig1..fig5");
  cmp->add_option("--t", cmp_args.times, "report only these times")->delimiter(',');
  cmp->add_flag("--giant", cmp_args.giant, "largest-particle law without cutoff instead");
  cmp->add_option("--n", c.n, "particles for --giant");
  add_run_flags(cmp, c);

  auto* fig = app.add_subcommand("figure", "data for one of the preset figures");
  fig->add_option("--preset", c.preset, "fig1..fig5")->required();
  fig->add_option("--format", c.format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  add_run_flags(fig, c);

  auto* self = app.add_subcommand("selftest", "quick end-to-end checks");
  bool include_slow = false;
  self->add_flag("--include-slow", include_slow, "also run the 3e5-particle preset");
  self->add_option("--replicas", c.replicas, "replicas per ensemble");
  self->add_option("--seed", c.seed, "base seed")->each([&c](const std::string&) { c.seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*sim) return cmd_simulate(c, sim_args);
    if (*ref) return cmd_reference(c, ref_args);
    if (*cmp) return cmd_compare(c, cmp_args);
    if (*fig) return cmd_figure(c);
    if (*self) return cmd_selftest(c, include_slow);
  } catch (const harness::Error& e) {
    std::cerr << "gelkit: " << e.what() << "\n";
    return e.config_error() ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "gelkit: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
