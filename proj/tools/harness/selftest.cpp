#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "output.hpp"
#include "report.hpp"

namespace harness {

namespace {

std::string describe(const char* fmt_str, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt_str, a, b);
  return buf;
}

void add_check(std::vector<CheckResult>& out, const std::string& name,
               const std::function<CheckResult()>& body) {
  try {
    auto r = body();
    r.name = name;
    out.push_back(r);
  } catch (const std::exception& e) {
    out.push_back({name, false, e.what()});
  }
}

}  // namespace

std::vector<CheckResult> run_selftest(bool include_slow, std::uint64_t seed, std::size_t replicas) {
  std::vector<CheckResult> checks;

  add_check(checks, "explicit Flory mass identities", [] {
    double pre = 0, post = 0, ts = 0;
    GK_CHECK(gk_series_mass(GK_MODEL_FLORY, 0.5, 400, &pre));
    GK_CHECK(gk_series_mass(GK_MODEL_FLORY, 2.0, 400, &post));
    GK_CHECK(gk_t_star(2.0, &ts));
    const bool ok = std::fabs(pre - 1.0) <= 1e-6 && std::fabs(post - ts / 2.0) <= 1e-4 &&
                    std::fabs(ts - 0.40638) <= 1e-5;
    return CheckResult{"", ok, describe("mass(0.5)=%.9f mass(2)=%.6f", pre, post)};
  });

  add_check(checks, "T1 table", [] {
    double a = 0, b = 0, c = 0;
    GK_CHECK(gk_t1(0.5, &a));
    GK_CHECK(gk_t1(0.8, &b));
    GK_CHECK(gk_t1(0.33, &c));
    const bool ok = std::round(a * 1000) == 1386 && std::round(b * 1000) == 2012 &&
                    std::round(c * 100) == 121;
    return CheckResult{"", ok, describe("T1(0.5)=%.4f T1(0.8)=%.4f", a, b)};
  });

  add_check(checks, "Flory ODE against explicit solution", [] {
    const KernelHandle kernel = make_kernel("multiplicative", 1.0);
    gk_ode_solution* raw = nullptr;
    GK_CHECK(gk_ode_solve(GK_MODEL_FLORY, kernel.get(), 300, 2.0, 1e-3, 500, &raw));
    const OdeHandle sol(raw);
    std::size_t states = 0;
    GK_CHECK(gk_ode_solution_size(raw, &states, nullptr));
    double worst = 0.0;
    for (std::size_t i = 0; i < states; ++i) {
      double t = 0;
      GK_CHECK(gk_ode_solution_state(raw, i, &t, nullptr));
      for (std::int64_t k = 1; k <= 10; ++k) {
        double c = 0, ref = 0;
        GK_CHECK(gk_ode_solution_conc(raw, i, static_cast<std::size_t>(k), &c));
        GK_CHECK(gk_explicit_c(GK_MODEL_FLORY, t, k, &ref));
        worst = std::max(worst, std::fabs(c - ref));
      }
    }
    return CheckResult{"", worst <= 1e-4, describe("max |c - c_ref| = %.3g (tol %.0e)", worst, 1e-4)};
  });

  for (const char* name : {"fig1", "fig2", "fig3", "fig4"}) {
    add_check(checks, std::string("preset ") + name + " regime", [&, name] {
      const auto& preset = find_preset(name);
      const auto report = run_preset(preset, seed, replicas);
      bool ok = false;
      const std::string n = name;
      if (n == "fig1") ok = report.verdict == "smoluchowski";
      if (n == "fig2") ok = report.verdict == "flory";
      if (n == "fig3" || n == "fig4") {
        ok = report.verdict != "flory" && report.verdict != "smoluchowski" &&
             !report.transitions.empty() &&
             std::fabs(report.transitions.front().mean_time - report.t1) <= 0.15;
      }
      return CheckResult{"", ok, "verdict: " + report.verdict};
    });
  }

  add_check(checks, "giant particle at t = 2", [&] {
    const auto report = giant_particle_report(10000, replicas, {2.0}, seed, {});
    const auto& row = report.rows.front();
    return CheckResult{"", std::fabs(row.deviation) <= 0.05,
                       describe("M1/m = %.4f, reference %.4f", row.mean, row.reference)};
  });

  add_check(checks, "pair-tail bound", [&] {
    const auto rows = pair_tail_report(10000, replicas, 3.0, seed, {10, 100});
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.mean <= r.bound;
    return CheckResult{"", ok, describe("b=10: %.4f, b=100: %.5f", rows[0].mean, rows[1].mean)};
  });

  if (include_slow) {
    add_check(checks, "preset fig5 bifurcates twice", [&] {
      const auto report = run_preset(find_preset("fig5"), seed, replicas);
      std::size_t within = 0;
      for (const auto& tr : report.transitions) within += tr.mean_time <= 3.0;
      return CheckResult{"", within >= 2, "behaviour changes on [0,3]: " + std::to_string(within)};
    });
  }
  return checks;
}

bool print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all;
}

}  // namespace harness
