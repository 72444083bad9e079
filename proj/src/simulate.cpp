#include "gelkit/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "gelkit/errors.hpp"

namespace gelkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_matching_alpha(const ParticleSystem& sys, const KernelSpec& kernel) {
  if (sys.alpha() != kernel.alpha()) {
    throw LogicError("particle system weights were built for a different kernel exponent");
  }
}

ClockMode resolve_mode(ClockMode mode, const KernelSpec& kernel) {
  if (mode == ClockMode::Auto) {
    return kernel.family() == KernelFamily::Multiplicative ? ClockMode::ExactProduct
                                                           : ClockMode::Thinning;
  }
  if (mode == ClockMode::ExactProduct && kernel.family() != KernelFamily::Multiplicative) {
    throw LogicError("the closed-form clock needs the multiplicative kernel");
  }
  return mode;
}

// Running sums over the particles with mass in [lo, hi], kept exact under
// merges so that time integrals cost O(1) per event.
class IntegralTracker {
 public:
  IntegralTracker(const TimeIntegralSpec& spec, const ParticleSystem& sys)
      : spec_(spec.observable), from_(spec.from), to_(spec.to) {
    switch (spec_.kind) {
      case ObservableKind::CountAtMass:
        lo_ = hi_ = spec_.param;
        break;
      case ObservableKind::TailMass:
      case ObservableKind::SecondTail:
        lo_ = spec_.param;
        break;
      case ObservableKind::PairTail:
        lo_ = spec_.param;
        hi_ = spec_.param2;
        break;
      default:
        break;
    }
    sys.for_each_mass([&](double x) { add(x, +1.0); });
  }

  void on_merge(double x, double y) {
    add(x, -1.0);
    add(y, -1.0);
    add(x + y, +1.0);
  }

  double value(const ParticleSystem& sys) const {
    const double m = sys.total_mass();
    switch (spec_.kind) {
      case ObservableKind::CountAtMass:
        return count_ / m;
      case ObservableKind::MassFractionLargest:
        return sys.largest() / m;
      case ObservableKind::TailMass:
        return s1_ / m;
      case ObservableKind::SecondTail:
        return (s1_ - (sys.largest() >= lo_ ? sys.largest() : 0.0)) / m;
      case ObservableKind::Moment:
        return sp_ / m;
      case ObservableKind::ActiveMassFraction:
        return sys.sum_mass_active() / m;
      case ObservableKind::PairTail:
        return (s1_ * s1_ - s2_) / (m * m);
      case ObservableKind::InertCount:
        return static_cast<double>(sys.inert_count());
    }
    return 0.0;
  }

  /// Adds value * |[t0, t1] intersected with [from, to]|.
  void accumulate(const ParticleSystem& sys, double t0, double t1) {
    const double lo = std::max(t0, from_);
    const double hi = std::min(t1, to_);
    if (hi > lo) total_ += value(sys) * (hi - lo);
  }

  double total() const { return total_; }

 private:
  void add(double x, double sign) {
    if (spec_.kind == ObservableKind::Moment) sp_ += sign * std::pow(x, spec_.param);
    if (x < lo_ || x > hi_) return;
    count_ += sign;
    s1_ += sign * x;
    s2_ += sign * x * x;
  }

  ObservableSpec spec_;
  double from_;
  double to_;
  double lo_ = -kInf;
  double hi_ = kInf;
  double count_ = 0.0;
  double s1_ = 0.0;
  double s2_ = 0.0;
  double sp_ = 0.0;
  double total_ = 0.0;
};

unsigned thread_budget(unsigned requested, std::size_t replicas) {
  unsigned n = requested;
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GELKIT_THREADS")) {
      const long cap = std::strtol(env, nullptr, 10);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, replicas));
}

}  // namespace

double total_rate_naive(const ParticleSystem& sys, const KernelSpec& kernel) {
  const auto all = sys.masses();
  const Cutoff cut = sys.cutoff();
  double sum = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      sum += evaluate_cutoff(kernel, cut, all[i], all[j]);
    }
  }
  return sum / sys.total_mass();
}

double total_rate_product_closed_form(const ParticleSystem& sys, const KernelSpec& kernel) {
  if (kernel.family() != KernelFamily::Multiplicative) {
    throw LogicError("closed-form total rate is only valid for the multiplicative kernel");
  }
  require_matching_alpha(sys, kernel);
  if (sys.active_count() < 2) return 0.0;
  const double s1 = sys.sum_mass_active();
  const double s2 = sys.sum_mass_one_plus_alpha_active();
  return std::max(0.0, (s1 * s1 - s2) / (2.0 * sys.total_mass()));
}

double majorant_rate(const ParticleSystem& sys, const KernelSpec& kernel) {
  require_matching_alpha(sys, kernel);
  if (sys.active_count() < 2) return 0.0;
  return kernel.c_upper() * sys.sum_mass_alpha_active() * sys.sum_mass_active() /
         sys.total_mass();
}

namespace {

// One proposal against the majorant: i ~ x^a, j ~ x, so the unordered pair
// {i,j} is proposed with weight x_i^a x_j + x_i x_j^a.
std::optional<std::pair<Slot, Slot>> propose(const ParticleSystem& sys, const KernelSpec& kernel,
                                             Rng& rng) {
  const Slot i = sys.draw_by_mass_alpha(rng.uniform());
  const Slot j = sys.draw_by_mass(rng.uniform());
  if (i == j) return std::nullopt;
  const double x = sys.mass(i);
  const double y = sys.mass(j);
  const double accept = kernel.evaluate(x, y) / kernel.majorant(x, y);
  if (accept < 1.0 && rng.uniform() >= accept) return std::nullopt;
  return std::make_pair(std::min(i, j), std::max(i, j));
}

}  // namespace

std::pair<Slot, Slot> sample_pair(const ParticleSystem& sys, const KernelSpec& kernel, Rng& rng) {
  require_matching_alpha(sys, kernel);
  if (sys.active_count() < 2) throw LogicError("sample_pair needs two active particles");
  while (true) {
    if (auto pair = propose(sys, kernel, rng)) return *pair;
  }
}

std::optional<PendingEvent> next_event(const ParticleSystem& sys, const KernelSpec& kernel,
                                       Rng& rng, double t_now, ClockMode mode) {
  mode = resolve_mode(mode, kernel);
  require_matching_alpha(sys, kernel);
  if (sys.active_count() < 2) return std::nullopt;

  if (mode == ClockMode::ExactProduct) {
    const double rate = total_rate_product_closed_form(sys, kernel);
    if (!(rate > 0.0)) return std::nullopt;
    const double t = t_now + rng.exponential(rate);
    // Pairs i != j with probability proportional to x_i x_j.
    while (true) {
      const Slot i = sys.draw_by_mass(rng.uniform());
      const Slot j = sys.draw_by_mass(rng.uniform());
      if (i != j) return PendingEvent{t, std::min(i, j), std::max(i, j), 1};
    }
  }

  const double rate = majorant_rate(sys, kernel);
  if (!(rate > 0.0)) return std::nullopt;
  double t = t_now;
  std::uint64_t proposals = 0;
  while (true) {
    t += rng.exponential(rate);
    ++proposals;
    if (auto pair = propose(sys, kernel, rng)) {
      return PendingEvent{t, pair->first, pair->second, proposals};
    }
  }
}

StepResult step(ParticleSystem& sys, const KernelSpec& kernel, Rng& rng, double t_now,
                ClockMode mode) {
  const auto ev = next_event(sys, kernel, rng, t_now, mode);
  if (!ev) return {kInf, true};
  return {ev->time, false, sys.coalesce(ev->first, ev->second)};
}

Cutoff CutoffMode::resolve(double total_mass) const {
  switch (kind) {
    case Kind::None:
      return Cutoff::at(total_mass);
    case Kind::Absolute:
      return Cutoff::at(value);
    case Kind::FractionOfMass:
      return Cutoff::at(value * total_mass);
  }
  return Cutoff::none();
}

void SimConfig::validate() const {
  if (initial_masses.empty()) {
    if (n == 0) throw ConfigError("n must be at least 1");
  } else {
    if (n != initial_masses.size()) throw ConfigError("n must equal the number of initial masses");
    for (double x : initial_masses)
      if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("initial masses must be positive");
  }
  switch (cutoff.kind) {
    case CutoffMode::Kind::None:
      break;
    case CutoffMode::Kind::Absolute:
      if (!(cutoff.value > 0.0)) throw ConfigError("absolute cutoff must be positive");
      break;
    case CutoffMode::Kind::FractionOfMass:
      if (!(cutoff.value > 0.0 && cutoff.value <= 1.0)) {
        throw ConfigError("cutoff fraction must lie in (0,1]");
      }
      break;
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive and finite");
  for (std::size_t i = 0; i < obs_grid.size(); ++i) {
    if (!(obs_grid[i] >= 0.0 && obs_grid[i] <= t_max)) {
      throw ConfigError("observation times must lie in [0, t_max]");
    }
    if (i > 0 && obs_grid[i] < obs_grid[i - 1]) throw ConfigError("observation grid must be sorted");
  }
  if (replicas == 0) throw ConfigError("replicas must be at least 1");
  for (const auto& spec : integrals) {
    if (!(spec.from < spec.to)) throw ConfigError("time integral needs from < to");
  }
}

ParticleSystem SimConfig::initial_system() const {
  if (initial_masses.empty()) {
    const Cutoff cut = cutoff.resolve(static_cast<double>(n));
    return ParticleSystem::monodisperse(n, cut, kernel.alpha());
  }
  double total = 0.0;
  for (double x : initial_masses) total += x;
  return ParticleSystem::from_masses(initial_masses, cutoff.resolve(total), kernel.alpha());
}

Trajectory run(const SimConfig& config, std::size_t replica) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  ParticleSystem sys = config.initial_system();
  Rng rng = Rng::for_replica(config.seed, replica);
  const KernelSpec& kernel = config.kernel;
  const double t_max = config.t_max;

  Trajectory traj;
  traj.times = config.obs_grid;
  for (const auto& obs : config.observables) {
    traj.names.push_back(obs.name());
    traj.values.emplace_back().reserve(config.obs_grid.size());
  }
  std::vector<IntegralTracker> trackers;
  trackers.reserve(config.integrals.size());
  for (const auto& spec : config.integrals) trackers.emplace_back(spec, sys);

  std::size_t next_obs = 0;
  double t = 0.0;
  while (true) {
    const auto ev = next_event(sys, kernel, rng, t, config.clock);
    const double t_next = ev ? ev->time : kInf;

    for (; next_obs < config.obs_grid.size() && config.obs_grid[next_obs] < t_next; ++next_obs) {
      for (std::size_t k = 0; k < config.observables.size(); ++k) {
        traj.values[k].push_back(observe(sys, config.observables[k]));
      }
      if (config.record_snapshots) traj.snapshots.push_back(histogram(sys));
    }
    for (auto& tr : trackers) tr.accumulate(sys, t, std::min(t_next, t_max));

    if (!ev) {
      traj.absorbed = true;
      break;
    }
    traj.proposals += ev->proposals;
    if (t_next > t_max) break;

    const double x = sys.mass(ev->first);
    const double y = sys.mass(ev->second);
    const auto merge = sys.coalesce(ev->first, ev->second);
    for (auto& tr : trackers) tr.on_merge(x, y);
    if (merge.became_inert) traj.inert_times.push_back(t_next);
    if (config.record_events) traj.events.push_back({traj.event_count, t_next, x, y});
    ++traj.event_count;
    t = t_next;
  }

  for (const auto& tr : trackers) traj.integrals.push_back(tr.total());
  traj.final_particles = sys.size();
  traj.final_largest = sys.largest();
  traj.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return traj;
}

Histogram histogram(const ParticleSystem& sys) {
  auto all = sys.masses();
  std::sort(all.begin(), all.end());
  Histogram h;
  for (double x : all) {
    if (!h.masses.empty() && h.masses.back() == x) {
      ++h.counts.back();
    } else {
      h.masses.push_back(x);
      h.counts.push_back(1);
    }
  }
  return h;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    s.se = std::sqrt(var / static_cast<double>(values.size()));
  }
  return s;
}

EnsembleResult run_ensemble(const SimConfig& config) {
  config.validate();
  EnsembleResult result;
  result.replicas.resize(config.replicas);

  const unsigned workers = thread_budget(config.threads, config.replicas);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t r = next++; r < config.replicas; r = next++) {
        result.replicas[r] = run(config, r);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> column(config.replicas);
  result.observables.resize(config.observables.size());
  for (std::size_t k = 0; k < config.observables.size(); ++k) {
    for (std::size_t g = 0; g < config.obs_grid.size(); ++g) {
      for (std::size_t r = 0; r < config.replicas; ++r) column[r] = result.replicas[r].values[k][g];
      result.observables[k].push_back(summarize(column));
    }
  }
  for (std::size_t q = 0; q < config.integrals.size(); ++q) {
    for (std::size_t r = 0; r < config.replicas; ++r) column[r] = result.replicas[r].integrals[q];
    result.integrals.push_back(summarize(column));
  }
  return result;
}

double pair_tail_integral(std::span<const MassSnapshot> history, double end_time,
                          double total_mass, double b, double a) {
  if (!(b < a)) throw ConfigError("pair tail band needs b < a");
  double integral = 0.0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    const double until = k + 1 < history.size() ? history[k + 1].time : end_time;
    const double dt = until - history[k].time;
    if (dt <= 0.0) continue;
    double s1 = 0.0;
    double s2 = 0.0;
    for (double x : history[k].masses) {
      if (x >= b && x <= a) {
        s1 += x;
        s2 += x * x;
      }
    }
    integral += (s1 * s1 - s2) / (total_mass * total_mass) * dt;
  }
  return integral;
}

}  // namespace gelkit
