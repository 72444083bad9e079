#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace harness {

/// Shortest round-trip-safe decimal form used in every CSV.
std::string fmt(double v);

/// "t,replica,<obs1>,<obs2>,..." with one row per (grid time, replica).
void write_trajectory_csv(std::ostream& out, const Ensemble& ens);
/// "t,<obs>_mean,<obs>_se,...".
void write_ensemble_csv(std::ostream& out, const Ensemble& ens);
/// "event_index,t,x_i,x_j" for one replica.
void write_event_log(std::ostream& out, const Ensemble& ens, std::size_t replica);
/// "t,mass,count" mass histogram of one replica at every grid time.
void write_snapshots(std::ostream& out, const Ensemble& ens, std::size_t replica);

/// "t,mc_mean,mc_se,flory_ref,smolu_ref".
void write_figure_csv(std::ostream& out, const CompareReport& report);
/// Figure columns plus z-scores, followed by transitions as comment lines.
void write_compare_csv(std::ostream& out, const CompareReport& report);
/// Human-readable summary.
void print_compare(std::ostream& out, const CompareReport& report);
void print_giant(std::ostream& out, const GiantReport& report);

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Static SVG line chart with auto-scaled y axis.
void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series);
void write_figure_svg(std::ostream& out, const CompareReport& report);

}  // namespace harness
