#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace harness {

namespace {

double explicit_c(gk_model model, double t, std::int64_t k) {
  double v = 0.0;
  GK_CHECK(gk_explicit_c(model, t, k, &v));
  return v;
}

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", t);
  return buf;
}

std::string band_name(const char* kind, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%.0f", kind, b);
  return buf;
}

}  // namespace

double z_score(double mean, double se, double reference) {
  const double diff = mean - reference;
  if (se > 0.0) return diff / se;
  if (diff == 0.0) return 0.0;
  return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

CompareReport run_preset(const ExperimentPreset& preset, std::uint64_t seed, std::size_t replicas,
                         const std::vector<double>& grid) {
  RunConfig cfg = preset_config(preset, seed, replicas);
  if (!grid.empty()) {
    cfg.obs_grid = grid;
    cfg.t_max = std::max(cfg.t_max, grid.back());
  }
  const Ensemble ens = simulate(cfg);

  CompareReport report;
  report.preset = preset.name;
  report.gamma = preset.gamma();
  for (std::size_t g = 0; g < ens.times(); ++g) {
    CompareRow row{};
    row.t = ens.time(g);
    std::tie(row.mc_mean, row.mc_se) = ens.summary(0, g);
    row.flory_ref = explicit_c(GK_MODEL_FLORY, row.t, 2);
    row.smolu_ref = explicit_c(GK_MODEL_SMOLUCHOWSKI, row.t, 2);
    row.z_flory = z_score(row.mc_mean, row.mc_se, row.flory_ref);
    row.z_smolu = z_score(row.mc_mean, row.mc_se, row.smolu_ref);
    report.rows.push_back(row);
  }

  if (preset.tracks_transitions()) {
    GK_CHECK(gk_t1(report.gamma, &report.t1));
    std::vector<std::vector<double>> by_order;
    for (std::size_t r = 0; r < ens.replicas(); ++r) {
      const auto times = ens.inert_times(r);
      for (std::size_t k = 0; k < times.size(); ++k) {
        if (by_order.size() <= k) by_order.emplace_back();
        by_order[k].push_back(times[k]);
      }
    }
    for (std::size_t k = 0; k < by_order.size(); ++k) {
      const auto& v = by_order[k];
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      const double se = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1) /
                                                  static_cast<double>(v.size()))
                                     : 0.0;
      report.transitions.push_back({k + 1, mean, se, v.size()});
    }
  }

  bool all_flory = true;
  for (const auto& row : report.rows) {
    if (std::fabs(row.z_flory) > kVerdictZ) {
      all_flory = false;
      break;
    }
    report.flory_until = row.t;
  }
  bool smolu_after_gel = true;
  for (const auto& row : report.rows) {
    if (row.t > 1.0 && std::fabs(row.z_smolu) > kVerdictZ) smolu_after_gel = false;
  }
  if (all_flory) {
    report.verdict = "flory";
  } else if (smolu_after_gel) {
    report.verdict = "smoluchowski";
  } else {
    report.verdict = "flory until t=" + format_time(report.flory_until) + ", then departs";
  }
  return report;
}

GiantReport giant_particle_report(std::size_t n, std::size_t replicas,
                                  const std::vector<double>& times, std::uint64_t seed,
                                  const std::vector<double>& bs) {
  if (times.empty()) throw config_error("giant particle report needs observation times");
  RunConfig cfg;
  cfg.n = n;
  cfg.obs_grid = times;
  std::sort(cfg.obs_grid.begin(), cfg.obs_grid.end());
  cfg.t_max = cfg.obs_grid.back();
  cfg.seed = seed;
  cfg.replicas = replicas;
  cfg.observables = {"mass_fraction_largest"};
  const bool post_gel = cfg.t_max > 1.0;
  if (post_gel) {
    for (double b : bs) cfg.integrals.push_back({band_name("second_tail", b), 1.0, cfg.t_max});
  }
  const Ensemble ens = simulate(cfg);

  GiantReport report;
  for (std::size_t g = 0; g < ens.times(); ++g) {
    GiantRow row{};
    row.t = ens.time(g);
    std::tie(row.mean, row.se) = ens.summary(0, g);
    double mass = 0.0;
    GK_CHECK(gk_flory_mass(row.t, &mass));
    row.reference = 1.0 - mass;
    row.deviation = row.mean - row.reference;
    report.rows.push_back(row);
  }
  if (post_gel) {
    for (std::size_t q = 0; q < bs.size(); ++q) {
      const auto [mean, se] = ens.integral_summary(q);
      report.tails.push_back({bs[q], mean, se});
    }
  }
  return report;
}

std::vector<PairTailRow> pair_tail_report(std::size_t n, std::size_t replicas, double t_max,
                                          std::uint64_t seed, const std::vector<double>& bs) {
  RunConfig cfg;
  cfg.n = n;
  cfg.t_max = t_max;
  cfg.seed = seed;
  cfg.replicas = replicas;
  const double a = static_cast<double>(n);
  for (double b : bs) {
    if (!(b < a)) throw config_error("pair tail threshold b must be below the total mass");
    char name[96];
    std::snprintf(name, sizeof name, "pair_tail:%.17g:%.17g", b, a);
    cfg.integrals.push_back({name, 0.0, t_max});
  }
  const Ensemble ens = simulate(cfg);

  const KernelHandle kernel = make_kernel("multiplicative", 1.0);
  double L = 0.0;
  GK_CHECK(gk_pair_tail_constant(kernel.get(), &L));
  std::vector<PairTailRow> rows;
  for (std::size_t q = 0; q < bs.size(); ++q) {
    const auto [mean, se] = ens.integral_summary(q);
    rows.push_back({bs[q], mean, se, L / bs[q]});
  }
  return rows;
}

}  // namespace harness
