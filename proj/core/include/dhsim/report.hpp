#pragma once

#include <string>
#include <vector>

#include "dhsim/sim.hpp"
#include "dhsim/time_axis.hpp"

namespace dhsim::report {

// Writes hourly_<paradigm>_<capacity>.csv per successful sweep point,
// monthly_summary.csv, sweep_summary.csv, and the column schema document.
// All numbers in fixed decimal with 6 places. Returns the file manifest.
std::vector<std::string> write_results(const std::vector<sim::SweepPoint>& points,
                                       const TimeAxis& axis, const std::string& out_dir);

// Standalone SVG charts mirroring the comparative result families:
// cost vs capacity, monthly suboptimality, monthly scheduled/wasted
// volumes, monthly average prices. Byte-deterministic for equal inputs.
std::vector<std::string> render_charts(const std::vector<sim::SweepPoint>& points,
                                       const std::string& out_dir);

}  // namespace dhsim::report
