#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fogsim/harness/metrics.hpp"

namespace fogsim::harness {

struct PlotPoint {
  double value = 0.0;
  double mean_latency_ms = 0.0;  // mean of per-run means
  double std_latency_ms = 0.0;   // sample standard deviation across runs
  std::size_t runs = 0;          // runs that completed at least one request
};

struct PlotSeries {
  scenario::Architecture architecture = scenario::Architecture::kCoordinated;
  std::string variable;
  std::vector<PlotPoint> points;  // ascending by value
};

// One series per architecture present, traditional first. Rows whose mean is
// absent are skipped. Throws MixedSweepVariables when rows disagree on the
// swept variable.
std::vector<PlotSeries> emit_plot_data(const MetricsTable& table);

void write_plot_csv(const std::vector<PlotSeries>& series, const std::filesystem::path& path);

}  // namespace fogsim::harness
