#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace harness {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Ensemble& ens) {
  out << "t,replica";
  for (std::size_t k = 0; k < ens.observables(); ++k) out << ',' << ens.name(k);
  out << '\n';
  for (std::size_t g = 0; g < ens.times(); ++g) {
    const double t = ens.time(g);
    for (std::size_t r = 0; r < ens.replicas(); ++r) {
      out << fmt(t) << ',' << r;
      for (std::size_t k = 0; k < ens.observables(); ++k) out << ',' << fmt(ens.value(r, k, g));
      out << '\n';
    }
  }
}

void write_ensemble_csv(std::ostream& out, const Ensemble& ens) {
  out << 't';
  for (std::size_t k = 0; k < ens.observables(); ++k) {
    const auto name = ens.name(k);
    out << ',' << name << "_mean," << name << "_se";
  }
  out << '\n';
  for (std::size_t g = 0; g < ens.times(); ++g) {
    out << fmt(ens.time(g));
    for (std::size_t k = 0; k < ens.observables(); ++k) {
      const auto [mean, se] = ens.summary(k, g);
      out << ',' << fmt(mean) << ',' << fmt(se);
    }
    out << '\n';
  }
}

void write_event_log(std::ostream& out, const Ensemble& ens, std::size_t replica) {
  std::size_t count = 0;
  GK_CHECK(gk_ensemble_events(ens.raw(), replica, &count));
  out << "event_index,t,x_i,x_j\n";
  for (std::size_t i = 0; i < count; ++i) {
    double t = 0, x = 0, y = 0;
    GK_CHECK(gk_ensemble_event(ens.raw(), replica, i, &t, &x, &y));
    out << i << ',' << fmt(t) << ',' << fmt(x) << ',' << fmt(y) << '\n';
  }
}

void write_snapshots(std::ostream& out, const Ensemble& ens, std::size_t replica) {
  out << "t,mass,count\n";
  for (std::size_t g = 0; g < ens.times(); ++g) {
    const double* masses = nullptr;
    const std::uint64_t* counts = nullptr;
    std::size_t bins = 0;
    GK_CHECK(gk_ensemble_snapshot(ens.raw(), replica, g, &masses, &counts, &bins));
    const std::string t = fmt(ens.time(g));
    for (std::size_t b = 0; b < bins; ++b) out << t << ',' << fmt(masses[b]) << ',' << counts[b] << '\n';
  }
}

void write_figure_csv(std::ostream& out, const CompareReport& report) {
  out << "t,mc_mean,mc_se,flory_ref,smolu_ref\n";
  for (const auto& r : report.rows) {
    out << fmt(r.t) << ',' << fmt(r.mc_mean) << ',' << fmt(r.mc_se) << ',' << fmt(r.flory_ref)
        << ',' << fmt(r.smolu_ref) << '\n';
  }
}

void write_compare_csv(std::ostream& out, const CompareReport& report) {
  out << "t,mc_mean,mc_se,flory_ref,smolu_ref,z_flory,z_smolu\n";
  for (const auto& r : report.rows) {
    out << fmt(r.t) << ',' << fmt(r.mc_mean) << ',' << fmt(r.mc_se) << ',' << fmt(r.flory_ref)
        << ',' << fmt(r.smolu_ref) << ',' << fmt(r.z_flory) << ',' << fmt(r.z_smolu) << '\n';
  }
  for (const auto& tr : report.transitions) {
    out << "# transition," << tr.order << ',' << fmt(tr.mean_time) << ',' << fmt(tr.se) << ','
        << tr.replicas_reached << '\n';
  }
  out << "# verdict," << report.verdict << '\n';
}

void print_compare(std::ostream& out, const CompareReport& report) {
  char line[160];
  out << "preset " << report.preset << "  (a/m = " << fmt(report.gamma) << ")\n";
  std::snprintf(line, sizeof line, "%8s %10s %9s %10s %10s %9s %9s\n", "t", "mc_mean", "mc_se",
                "flory", "smolu", "z_flory", "z_smolu");
  out << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%8.3f %10.5f %9.5f %10.5f %10.5f %9.2f %9.2f\n", r.t,
                  r.mc_mean, r.mc_se, r.flory_ref, r.smolu_ref, r.z_flory, r.z_smolu);
    out << line;
  }
  if (report.t1 > 0.0) {
    out << "T1(" << fmt(report.gamma) << ") = " << fmt(report.t1) << '\n';
    for (const auto& tr : report.transitions) {
      std::snprintf(line, sizeof line,
                    "behaviour change %zu: giant particle turns inert at t = %.4f +- %.4f (%zu "
                    "replicas)\n",
                    tr.order, tr.mean_time, tr.se, tr.replicas_reached);
      out << line;
    }
  }
  out << "verdict: " << report.verdict << '\n';
}

void print_giant(std::ostream& out, const GiantReport& report) {
  char line[160];
  std::snprintf(line, sizeof line, "%8s %12s %10s %12s %12s\n", "t", "M1/m mean", "se",
                "1-<mu_t,x>", "deviation");
  out << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%8.3f %12.5f %10.5f %12.5f %12.5f\n", r.t, r.mean, r.se,
                  r.reference, r.deviation);
    out << line;
  }
  for (const auto& t : report.tails) {
    std::snprintf(line, sizeof line, "second-tail integral over (1, t_max], b = %-6g: %.5g +- %.2g\n",
                  t.b, t.mean, t.se);
    out << line;
  }
}

void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series) {
  constexpr double W = 720, H = 440, left = 70, right = 20, top = 40, bottom = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = 0.0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  y1 *= 1.05;
  const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  const auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "font-family=\"sans-serif\" font-size=\"12\">\n",
                W, H);
  out << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%.0f\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">",
                W / 2);
  out << buf << title << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<path d=\"M%.1f %.1f V%.1f H%.1f\" stroke=\"black\" fill=\"none\"/>\n", left, top,
                H - bottom, W - right);
  out << buf;
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%.3g</text>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.3g</text>\n",
                  px(xv), H - bottom + 18, xv, left - 6, py(yv) + 4, yv);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">", W / 2,
                H - 12);
  out << buf << x_label << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 16 %.1f)\">",
                H / 2, H / 2);
  out << buf << y_label << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"%s\"%s/>"
                  "<text x=\"%.0f\" y=\"%.0f\">",
                  W - 200, top + 12 + 18.0 * k, W - 170, top + 12 + 18.0 * k, s.color.c_str(),
                  s.dashed ? " stroke-dasharray=\"6 4\"" : "", W - 164, top + 16 + 18.0 * k);
    out << buf << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

void write_figure_svg(std::ostream& out, const CompareReport& report) {
  Series mc{"Monte Carlo", "#1f4e9c", {}, {}, false};
  Series flory{"Flory c(t,2)", "#c0392b", {}, {}, true};
  Series smolu{"Smoluchowski c(t,2)", "#27ae60", {}, {}, true};
  for (const auto& r : report.rows) {
    mc.x.push_back(r.t);
    mc.y.push_back(r.mc_mean);
    flory.x.push_back(r.t);
    flory.y.push_back(r.flory_ref);
    smolu.x.push_back(r.t);
    smolu.y.push_back(r.smolu_ref);
  }
  write_svg_chart(out, report.preset + ": density of mass-2 particles", "t", "mu_t({2})",
                  {mc, flory, smolu});
}

}  // namespace harness
