#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gelkit/errors.hpp"
#include "gelkit/simulate.hpp"
#include "support.hpp"

using namespace gelkit;

namespace {

using testing_support::chi_square_p;

bool within(const Summary& s, double ref) { return std::fabs(s.mean - ref) <= 4 * s.se; }

std::vector<KernelSpec> all_families() {
  return {KernelSpec::multiplicative(), KernelSpec::symmetric_alpha(0.5), KernelSpec::aldous(0.5)};
}

// Chi-square of sample_pair against probabilities enumerated from the kernel.
double pair_law_p(const std::vector<double>& masses, const KernelSpec& kernel, int draws,
                  std::uint64_t seed) {
  const auto sys = ParticleSystem::from_masses(masses, Cutoff::none(), kernel.alpha());
  const auto slots = sys.active_slots();
  std::map<std::pair<Slot, Slot>, std::size_t> index;
  std::vector<double> probs;
  double total = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      index[{slots[i], slots[j]}] = probs.size();
      const double w = kernel.evaluate(sys.mass(slots[i]), sys.mass(slots[j]));
      probs.push_back(w);
      total += w;
    }
  }
  for (double& p : probs) p /= total;
  std::vector<double> counts(probs.size(), 0.0);
  Rng rng(seed);
  for (int d = 0; d < draws; ++d) counts.at(index.at(sample_pair(sys, kernel, rng))) += 1;
  return chi_square_p(counts, probs);
}

SimConfig flory_config(std::size_t n, double t_max) {
  SimConfig c;
  c.n = n;
  c.cutoff = CutoffMode::absolute(static_cast<double>(n));
  c.t_max = t_max;
  c.obs_grid = {t_max};
  c.observables = {ObservableSpec::parse("count_at_mass:2")};
  return c;
}

}  // namespace

TEST_CASE("naive total rate") {
  const auto k = KernelSpec::multiplicative();
  const std::vector<double> m{1, 2, 3};
  CHECK(total_rate_naive(ParticleSystem::from_masses(m), k) == doctest::Approx(11.0 / 6));
  CHECK(total_rate_naive(ParticleSystem::from_masses(m, Cutoff::at(2)), k) == doctest::Approx(2.0 / 6));
  CHECK(total_rate_naive(ParticleSystem::monodisperse(1), k) == 0.0);
}

TEST_CASE("closed-form product rate") {
  const auto k = KernelSpec::multiplicative();
  CHECK(total_rate_product_closed_form(ParticleSystem::from_masses(std::vector<double>{1, 2, 3}), k) ==
        doctest::Approx(11.0 / 6));
  const auto five = ParticleSystem::monodisperse(5);
  CHECK(total_rate_product_closed_form(five, k) == doctest::Approx(2.0));
  CHECK(total_rate_naive(five, k) == doctest::Approx(2.0));
  CHECK(total_rate_product_closed_form(ParticleSystem::from_masses(std::vector<double>{5, 6}, Cutoff::at(2)), k) == 0.0);
  CHECK_THROWS_AS(total_rate_product_closed_form(five, KernelSpec::aldous(1.0)), LogicError);

  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> size(2, 60);
  std::uniform_real_distribution<double> mass(0.01, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> masses(static_cast<std::size_t>(size(gen)));
    for (double& x : masses) x = mass(gen);
    const auto sys = ParticleSystem::from_masses(masses, trial % 2 ? Cutoff::at(25.0) : Cutoff::none());
    const double naive = total_rate_naive(sys, k);
    CHECK(total_rate_product_closed_form(sys, k) == doctest::Approx(naive).epsilon(1e-10));
    CHECK(majorant_rate(sys, k) >= naive);
  }
}

TEST_CASE("majorant rate dominates for every family") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> mass(0.1, 30.0);
  for (const auto& k : all_families()) {
    std::vector<double> masses(40);
    for (double& x : masses) x = mass(gen);
    const auto sys = ParticleSystem::from_masses(masses, Cutoff::none(), k.alpha());
    CHECK(majorant_rate(sys, k) >= total_rate_naive(sys, k));
  }
}

TEST_CASE("pair law on {1,2,3}") {
  CHECK(pair_law_p({1, 2, 3}, KernelSpec::multiplicative(), 100000, 11) > 1e-3);
  const auto two = ParticleSystem::from_masses(std::vector<double>{4, 9});
  Rng rng(3);
  for (const auto& k : all_families()) {
    const auto sys = ParticleSystem::from_masses(std::vector<double>{4, 9}, Cutoff::none(), k.alpha());
    for (int i = 0; i < 100; ++i) {
      const auto [a, b] = sample_pair(sys, k, rng);
      CHECK(std::set<double>{sys.mass(a), sys.mass(b)} == std::set<double>{4, 9});
    }
  }
  CHECK_THROWS_AS(sample_pair(ParticleSystem::monodisperse(1), KernelSpec::multiplicative(), rng),
                  LogicError);
}

TEST_CASE("pair law on six particles for every family") {
  for (const auto& k : {KernelSpec::multiplicative(), KernelSpec::symmetric_alpha(0.5),
                        KernelSpec::symmetric_alpha(1.0), KernelSpec::aldous(0.5),
                        KernelSpec::aldous(1.0)}) {
    CAPTURE(to_string(k.family()));
    CAPTURE(k.alpha());
    CHECK(pair_law_p({1, 2, 3, 4, 5, 6}, k, 100000, 77) > 1e-3);
  }
}

TEST_CASE("multiplicative thinning only rejects self-pairs") {
  const auto k = KernelSpec::multiplicative();
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> mass(0.1, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = mass(gen), y = mass(gen);
    CHECK(k.evaluate(x, y) == k.majorant(x, y));
  }
  // Self-pairs are proposed and rejected, so proposals per event average
  // majorant rate / true rate.
  const auto sys = ParticleSystem::from_masses(std::vector<double>{1, 2, 3, 7, 7, 11});
  Rng rng(4);
  std::vector<double> proposals;
  for (int i = 0; i < 20000; ++i)
    proposals.push_back(static_cast<double>(next_event(sys, k, rng, 0.0, ClockMode::Thinning)->proposals));
  const auto s = summarize(proposals);
  CHECK(within(s, majorant_rate(sys, k) / total_rate_naive(sys, k)));
}

TEST_CASE("two unit masses wait on average 2") {
  const auto k = KernelSpec::multiplicative();
  for (auto mode : {ClockMode::ExactProduct, ClockMode::Thinning}) {
    Rng rng(21);
    std::vector<double> waits;
    for (int r = 0; r < 10000; ++r) {
      auto sys = ParticleSystem::monodisperse(2);
      const auto res = step(sys, k, rng, 0.0, mode);
      REQUIRE_FALSE(res.absorbed);
      waits.push_back(res.time);
      CHECK(sys.size() == 1);
    }
    const auto s = summarize(waits);
    CHECK(std::fabs(s.mean - 2.0) <= 3 * s.se);
  }
}

TEST_CASE("absorption") {
  Rng rng(1);
  for (const auto& k : all_families()) {
    auto single = ParticleSystem::monodisperse(1, Cutoff::none(), k.alpha());
    CHECK_FALSE(next_event(single, k, rng, 0.0).has_value());
    const auto res = step(single, k, rng, 0.5);
    CHECK(res.absorbed);
    CHECK(std::isinf(res.time));
    CHECK(single.size() == 1);
    auto inert = ParticleSystem::from_masses(std::vector<double>{3, 4, 5}, Cutoff::at(2), k.alpha());
    CHECK_FALSE(next_event(inert, k, rng, 0.0).has_value());
  }
  CHECK_THROWS_AS(next_event(ParticleSystem::monodisperse(3), KernelSpec::aldous(1.0), rng, 0.0,
                             ClockMode::ExactProduct),
                  LogicError);
}

TEST_CASE("thinned first event time is exponential with the exact rate") {
  // Monodisperse n = 100, and a spread of masses where rejections are frequent.
  std::vector<double> spread(100);
  for (std::size_t i = 0; i < spread.size(); ++i) spread[i] = 1.0 + static_cast<double>(i % 17) * 3.5;
  for (double alpha : {0.5, 1.0}) {
    const auto k = KernelSpec::aldous(alpha);
    for (const auto& sys : {ParticleSystem::monodisperse(100, Cutoff::none(), alpha),
                            ParticleSystem::from_masses(spread, Cutoff::none(), alpha)}) {
      const double rate = total_rate_naive(sys, k);
      std::vector<double> times;
      for (std::uint64_t r = 0; r < 10000; ++r) {
        Rng rng = Rng::for_replica(31, r);
        times.push_back(next_event(sys, k, rng, 0.0, ClockMode::Thinning)->time);
      }
      const double p = testing_support::ks_p(times, [rate](double t) { return -std::expm1(-rate * t); });
      CAPTURE(alpha);
      CHECK(p > 1e-3);
    }
  }
}

TEST_CASE("cutoff modes resolve against the total mass") {
  CHECK(CutoffMode::none().resolve(50).a == 50.0);
  CHECK(CutoffMode::absolute(7).resolve(50).a == 7.0);
  CHECK(CutoffMode::fraction_of_mass(0.5).resolve(10000).a == 5000.0);
}

TEST_CASE("config validation") {
  SimConfig ok = flory_config(10, 1.0);
  CHECK_NOTHROW(ok.validate());
  auto bad = ok;
  bad.t_max = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ok;
  bad.obs_grid = {0.5, 0.2};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ok;
  bad.obs_grid = {1.5};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ok;
  bad.replicas = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ok;
  bad.cutoff = CutoffMode::fraction_of_mass(1.5);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ok;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ok;
  bad.initial_masses = {1, 2};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("single particle gives a flat trajectory") {
  for (const auto& k : all_families()) {
    SimConfig c;
    c.kernel = k;
    c.n = 1;
    c.t_max = 2.0;
    c.obs_grid = {0.0, 1.0, 2.0};
    c.observables = {ObservableSpec::parse("mass_fraction_largest")};
    const auto tr = run(c);
    CHECK(tr.event_count == 0);
    CHECK(tr.absorbed);
    CHECK(tr.values[0] == std::vector<double>{1, 1, 1});
  }
}

TEST_CASE("absorption freezes observables until t_max") {
  SimConfig c;
  c.n = 6;
  c.cutoff = CutoffMode::absolute(2.0);
  c.t_max = 100.0;
  c.obs_grid = {50.0, 100.0};
  c.observables = {ObservableSpec::parse("inert_count"), ObservableSpec::parse("active_mass_fraction")};
  const auto tr = run(c);
  CHECK(tr.absorbed);
  CHECK(tr.values[0][0] == tr.values[0][1]);
  CHECK(tr.values[1][1] <= 1.0 / 6 + 1e-12);  // at most one unit mass left active
}

TEST_CASE("count at mass 2 near the Flory value at t = 0.5") {
  auto c = flory_config(10000, 0.5);
  c.seed = 3;
  const auto tr = run(c);
  CHECK(std::fabs(tr.values[0][0] - 0.0920) < 0.01);
}

TEST_CASE("same seed, same trajectory and event log") {
  auto c = flory_config(2000, 2.0);
  c.kernel = KernelSpec::aldous(0.7);
  c.cutoff = CutoffMode::fraction_of_mass(0.4);
  c.obs_grid = {0.5, 1.0, 2.0};
  c.record_events = true;
  c.seed = 42;
  const auto a = run(c, 3), b = run(c, 3);
  CHECK(a.values == b.values);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].first_mass == b.events[i].first_mass);
  }
  CHECK(run(c, 4).values != a.values);
}

TEST_CASE("ensemble conventions") {
  auto c = flory_config(500, 1.0);
  c.observables.push_back(ObservableSpec::parse("moment:1"));
  c.replicas = 1;
  const auto one = run_ensemble(c);
  CHECK(one.observables[0][0].mean == run(c, 0).values[0][0]);
  CHECK(one.observables[0][0].se == 0.0);

  c.replicas = 20;
  const auto many = run_ensemble(c);
  CHECK(many.observables[1][0].mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(many.observables[1][0].se == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(many.observables[0][0].count == 20);

  // Results do not depend on the number of worker threads.
  c.threads = 1;
  const auto serial = run_ensemble(c);
  c.threads = 4;
  const auto parallel = run_ensemble(c);
  for (std::size_t r = 0; r < 20; ++r) CHECK(serial.replicas[r].values == parallel.replicas[r].values);
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{1, 2, 3, 4};
  const auto s = summarize(v);
  CHECK(s.mean == 2.5);
  CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.count == 4);
}

TEST_CASE("grid observations replay from the event log") {
  SimConfig c;
  c.kernel = KernelSpec::symmetric_alpha(0.5);
  c.n = 300;
  c.cutoff = CutoffMode::absolute(60);
  c.t_max = 1.5;
  c.obs_grid = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  c.observables = {ObservableSpec::parse("mass_fraction_largest")};
  c.record_events = true;
  c.record_snapshots = true;
  c.seed = 17;
  const auto tr = run(c);
  REQUIRE(tr.events.size() == tr.event_count);
  REQUIRE(tr.snapshots.size() == c.obs_grid.size());

  std::multiset<double> state;
  for (std::size_t i = 0; i < c.n; ++i) state.insert(1.0);
  std::size_t e = 0;
  for (std::size_t g = 0; g < c.obs_grid.size(); ++g) {
    for (; e < tr.events.size() && tr.events[e].time <= c.obs_grid[g]; ++e) {
      state.erase(state.find(tr.events[e].first_mass));
      state.erase(state.find(tr.events[e].second_mass));
      state.insert(tr.events[e].first_mass + tr.events[e].second_mass);
    }
    std::map<double, std::uint64_t> expect;
    for (double x : state) ++expect[x];
    std::map<double, std::uint64_t> got;
    for (std::size_t i = 0; i < tr.snapshots[g].masses.size(); ++i)
      got[tr.snapshots[g].masses[i]] = tr.snapshots[g].counts[i];
    CHECK(got == expect);
    CHECK(tr.values[0][g] == *state.rbegin() / 300.0);
  }
}

TEST_CASE("pair-tail integral by hand") {
  const std::vector<MassSnapshot> none{{0.0, {1, 2, 3}}};
  CHECK(pair_tail_integral(none, 5.0, 6.0, 10.0, 100.0) == 0.0);
  const std::vector<MassSnapshot> frozen{{0.0, {10, 10}}};
  CHECK(pair_tail_integral(frozen, 3.0, 20.0, 10.0, 100.0) == doctest::Approx(3.0 * 2 * 100 / 400.0));
  CHECK_THROWS_AS(pair_tail_integral(frozen, 3.0, 20.0, 10.0, 10.0), ConfigError);
}

TEST_CASE("incremental integral matches a replayed history") {
  SimConfig c;
  c.n = 2000;
  c.cutoff = CutoffMode::none();
  c.t_max = 3.0;
  c.obs_grid = {3.0};
  c.observables = {ObservableSpec::parse("inert_count")};
  c.integrals = {{ObservableSpec::parse("pair_tail:10:2000"), 0.0, 3.0},
                 {ObservableSpec::parse("second_tail:10"), 1.0, 3.0}};
  c.record_events = true;
  c.seed = 5;
  const auto tr = run(c);

  std::vector<MassSnapshot> history{{0.0, std::vector<double>(2000, 1.0)}};
  std::multiset<double> state(history[0].masses.begin(), history[0].masses.end());
  double second_tail = 0.0, last_t = 0.0;
  auto accumulate = [&](double until) {
    const double lo = std::max(last_t, 1.0), hi = std::min(until, 3.0);
    if (hi > lo) {
      auto it = state.rbegin();
      double s = 0.0;
      for (++it; it != state.rend() && *it >= 10.0; ++it) s += *it;
      second_tail += (hi - lo) * s / 2000.0;
    }
    last_t = until;
  };
  for (const auto& ev : tr.events) {
    if (ev.time > 3.0) break;
    accumulate(ev.time);
    state.erase(state.find(ev.first_mass));
    state.erase(state.find(ev.second_mass));
    state.insert(ev.first_mass + ev.second_mass);
    history.push_back({ev.time, std::vector<double>(state.begin(), state.end())});
  }
  accumulate(3.0);
  CHECK(tr.integrals[0] == doctest::Approx(pair_tail_integral(history, 3.0, 2000.0, 10.0, 2000.0)).epsilon(1e-9));
  CHECK(tr.integrals[1] == doctest::Approx(second_tail).epsilon(1e-9));
  CHECK(tr.integrals[0] > 0.0);
}
