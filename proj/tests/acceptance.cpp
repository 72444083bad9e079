// Acceptance runs: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <gelkit/gelkit.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gelkit/kernel.hpp"
#include "gelkit/reference.hpp"
#include "gelkit/simulate.hpp"
#include "harness/config.hpp"
#include "harness/presets.hpp"
#include "harness/report.hpp"
#include "support.hpp"

#ifndef GELKIT_CLI_PATH
#error "GELKIT_CLI_PATH must name the gelkit executable"
#endif

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr std::size_t kReplicas = 20;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string printf_string(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string printf_string(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

bool within_se(double mean, double se, double ref, double k = 3.0) {
  return std::fabs(mean - ref) <= k * se;
}

// Independent bisection for x e^-x = t e^-t on (0,1).
double bisect_t_star(double t) {
  const double target = t * std::exp(-t);
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::exp(-mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome explicit_identities() {
  const auto start = std::chrono::steady_clock::now();
  double pre = 0.0, post = 0.0, ts = 0.0;
  gk_series_mass(GK_MODEL_FLORY, 0.5, 400, &pre);
  gk_series_mass(GK_MODEL_FLORY, 2.0, 400, &post);
  gk_t_star(2.0, &ts);
  const double oracle = bisect_t_star(2.0);
  const double secs = seconds_since(start);
  const bool ok = std::fabs(pre - 1.0) <= 1e-6 && std::fabs(post - ts / 2) <= 1e-4 &&
                  std::fabs(ts - 0.40638) <= 1e-5 && std::fabs(ts - oracle) <= 1e-10 && secs < 1.0;
  return {ok, printf_string("sum(t=0.5)=%.9f sum(t=2)=%.6f t*(2)=%.6f oracle %.6f, %.3fs", pre, post,
                            ts, oracle, secs)};
}

Outcome t1_table() {
  double a = 0, b = 0, c = 0;
  gk_t1(0.5, &a);
  gk_t1(0.8, &b);
  gk_t1(0.33, &c);
  const bool ok = std::round(a * 1000) / 1000 == 1.386 && std::round(b * 1000) / 1000 == 2.012 &&
                  std::round(c * 100) / 100 == 1.21;
  return {ok, printf_string("T1(0.5)=%.4f T1(0.8)=%.4f T1(0.33)=%.4f", a, b, c)};
}

Outcome ode_vs_explicit() {
  const auto start = std::chrono::steady_clock::now();
  gk_kernel* kernel = nullptr;
  gk_kernel_create(GK_KERNEL_MULTIPLICATIVE, 1.0, &kernel);
  gk_ode_solution* sol = nullptr;
  const gk_status st = gk_ode_solve(GK_MODEL_FLORY, kernel, 300, 2.0, 1e-3, 500, &sol);
  gk_kernel_destroy(kernel);
  if (st != GK_OK) return {false, gk_last_error()};
  size_t states = 0;
  gk_ode_solution_size(sol, &states, nullptr);
  double worst = 0.0;
  std::vector<double> seen;
  for (size_t i = 0; i < states; ++i) {
    double t = 0;
    gk_ode_solution_state(sol, i, &t, nullptr);
    if (t < 0.25) continue;
    seen.push_back(t);
    for (int64_t k = 1; k <= 10; ++k) {
      double c = 0;
      gk_ode_solution_conc(sol, i, static_cast<size_t>(k), &c);
      worst = std::max(worst, std::fabs(c - gelkit::flory_c(t, k)));
    }
  }
  gk_ode_solution_destroy(sol);
  const double secs = seconds_since(start);
  bool times_ok = seen.size() == 4;
  for (size_t i = 0; times_ok && i < 4; ++i) times_ok = std::fabs(seen[i] - 0.5 * (i + 1)) < 1e-9;
  return {times_ok && worst <= 1e-4 && secs < 10.0,
          printf_string("max |c_ode - c_flory| over k<=10, t in {0.5,1,1.5,2}: %.2e, %.2fs", worst, secs)};
}

std::string row_text(const harness::CompareRow& r) {
  return printf_string("t=%.2f %.5f+-%.5f (flory %.5f smolu %.5f)", r.t, r.mc_mean, r.mc_se, r.flory_ref,
                       r.smolu_ref);
}

Outcome flory_regime() {
  const auto report = harness::run_preset(harness::find_preset("fig2"), kSeed, kReplicas, {0.5, 1.0, 2.0});
  const double expect[] = {0.09197, 0.06767, 0.01832};
  bool ok = report.rows.size() == 3;
  std::string detail;
  for (size_t i = 0; ok && i < 3; ++i) {
    const auto& r = report.rows[i];
    ok = std::fabs(r.flory_ref - expect[i]) < 1e-5 && within_se(r.mc_mean, r.mc_se, r.flory_ref);
    detail += row_text(r) + "; ";
  }
  return {ok, detail};
}

Outcome smoluchowski_regime() {
  const auto report = harness::run_preset(harness::find_preset("fig1"), kSeed, kReplicas, {2.0});
  const auto& r = report.rows.at(0);
  const bool ok = std::fabs(r.smolu_ref - 0.03384) < 1e-5 && std::fabs(r.flory_ref - 0.01832) < 1e-5 &&
                  within_se(r.mc_mean, r.mc_se, r.smolu_ref) && !within_se(r.mc_mean, r.mc_se, r.flory_ref);
  return {ok, row_text(r) + printf_string(", z_smolu=%.2f z_flory=%.2f", r.z_smolu, r.z_flory)};
}

Outcome gamma_regime() {
  const auto report =
      harness::run_preset(harness::find_preset("fig3"), kSeed, kReplicas, {0.5, 1.0, 1.2, 2.5});
  bool ok = report.rows.size() == 4;
  std::string detail;
  for (size_t i = 0; ok && i < 4; ++i) {
    const auto& r = report.rows[i];
    const bool agrees = within_se(r.mc_mean, r.mc_se, r.flory_ref);
    ok = (i < 3) ? agrees : !agrees;
    detail += row_text(r) + "; ";
  }
  return {ok, detail + printf_string("T1(0.5)=%.3f", report.t1)};
}

Outcome giant_particle() {
  const auto report = harness::giant_particle_report(10000, kReplicas, {1.5, 2.0, 3.0}, kSeed);
  // 1 - t*(t)/t is 0.5828 at t = 1.5 (t* = 0.6258); only the t = 2 and t = 3
  // values are pinned as literals.
  const double expect[] = {NAN, 0.7968, 0.9405};
  bool ok = report.rows.size() == 3;
  std::string detail;
  for (size_t i = 0; ok && i < 3; ++i) {
    const auto& r = report.rows[i];
    const double oracle = 1.0 - bisect_t_star(r.t) / r.t;
    ok = (std::isnan(expect[i]) || std::fabs(oracle - expect[i]) < 1e-4) &&
         std::fabs(r.reference - oracle) < 1e-9 && std::fabs(r.mean - oracle) <= 0.05;
    detail += printf_string("t=%.1f M1/m=%.4f ref %.4f; ", r.t, r.mean, oracle);
  }
  return {ok, detail};
}

Outcome pregel_smallness() {
  harness::RunConfig cfg;
  cfg.n = 10000;
  cfg.t_max = 0.9;
  cfg.obs_grid = {0.5, 0.9};
  cfg.seed = kSeed;
  cfg.replicas = kReplicas;
  cfg.observables = {"mass_fraction_largest"};
  const auto ens = harness::simulate(cfg);
  const double m05 = ens.summary(0, 0).first, m09 = ens.summary(0, 1).first;
  return {m05 <= 0.01 && m09 <= 0.05, printf_string("M1(0.5)/m=%.4f M1(0.9)/m=%.4f", m05, m09)};
}

Outcome pair_tail_bound() {
  // The run is carried well past absorption of the classical process.
  const auto rows = harness::pair_tail_report(10000, kReplicas, 50.0, kSeed, {10, 100});
  bool ok = rows.size() == 2;
  std::string detail;
  for (const auto& r : rows) {
    ok = ok && std::fabs(r.bound - 4.0 / r.b) < 1e-12 && r.mean <= r.bound;
    detail += printf_string("b=%g: %.5f (bound %.3f); ", r.b, r.mean, r.bound);
  }
  return {ok, detail};
}

Outcome sampler_law() {
  using gelkit::KernelSpec;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> masses{1, 2, 3, 4, 5, 6};
  bool ok = true;
  std::string detail;
  for (const auto& k : {KernelSpec::multiplicative(), KernelSpec::symmetric_alpha(0.5), KernelSpec::aldous(0.5)}) {
    const auto sys = gelkit::ParticleSystem::from_masses(masses, gelkit::Cutoff::none(), k.alpha());
    const auto slots = sys.active_slots();
    std::map<std::pair<gelkit::Slot, gelkit::Slot>, size_t> index;
    std::vector<double> probs;
    double total = 0.0;
    for (size_t i = 0; i < slots.size(); ++i) {
      for (size_t j = i + 1; j < slots.size(); ++j) {
        index[{slots[i], slots[j]}] = probs.size();
        probs.push_back(k.evaluate(sys.mass(slots[i]), sys.mass(slots[j])));
        total += probs.back();
      }
    }
    for (double& p : probs) p /= total;
    std::vector<double> counts(probs.size(), 0.0);
    gelkit::Rng rng(kSeed);
    for (int d = 0; d < 100000; ++d) counts.at(index.at(gelkit::sample_pair(sys, k, rng))) += 1;
    const double p = testing_support::chi_square_p(counts, probs);
    ok = ok && p > 1e-3;
    detail += printf_string("%s p=%.3f; ", std::string(gelkit::to_string(k.family())).c_str(), p);
  }
  const double secs = seconds_since(start);
  return {ok && secs < 5.0, detail + printf_string("%.2fs", secs)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome determinism() {
  const std::string cli = GELKIT_CLI_PATH;
  const std::string a = "acceptance_fig2_a.csv", b = "acceptance_fig2_b.csv";
  const int ra = std::system((cli + " figure --preset fig2 --seed 7 --out " + a).c_str());
  const int rb = std::system((cli + " figure --preset fig2 --seed 7 --out " + b).c_str());
  const std::string ca = slurp(a), cb = slurp(b);
  std::remove(a.c_str());
  std::remove(b.c_str());
  const bool ok = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
  return {ok, printf_string("exit %d/%d, %zu and %zu bytes, %s", ra, rb, ca.size(), cb.size(),
                            ca == cb ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"explicit-solution identities", explicit_identities},
      {"T1 table", t1_table},
      {"Flory ODE against explicit solution", ode_vs_explicit},
      {"Flory regime, n=a=1e4", flory_regime},
      {"Smoluchowski regime, a=100", smoluchowski_regime},
      {"gamma regime, a=m/2", gamma_regime},
      {"giant-particle law", giant_particle},
      {"pre-gel smallness", pregel_smallness},
      {"pair-tail bound 4/b", pair_tail_bound},
      {"sampler law on {1..6}", sampler_law},
      {"figure determinism", determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %2zu  %s  (%s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
