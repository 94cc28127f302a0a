#include "fogsim/harness/plot_data.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "fogsim/error.hpp"

namespace fogsim::harness {

std::vector<PlotSeries> emit_plot_data(const MetricsTable& table) {
  std::map<scenario::Architecture, std::map<double, std::vector<double>>> groups;
  std::string variable;
  for (const auto& r : table.rows) {
    if (variable.empty()) {
      variable = r.variable;
    } else if (r.variable != variable) {
      throw Error(ErrorCode::kMixedSweepVariables, "'" + variable + "' and '" + r.variable + "'");
    }
    auto& bucket = groups[r.architecture][r.value];
    if (r.mean_latency_ms) bucket.push_back(*r.mean_latency_ms);
  }

  std::vector<PlotSeries> out;
  for (const auto& [arch, by_value] : groups) {
    PlotSeries s{arch, variable, {}};
    for (const auto& [value, means] : by_value) {
      if (means.empty()) continue;
      double sum = 0.0;
      for (double m : means) sum += m;
      const double mean = sum / static_cast<double>(means.size());
      double ss = 0.0;
      for (double m : means) ss += (m - mean) * (m - mean);
      const double sd = means.size() > 1 ? std::sqrt(ss / static_cast<double>(means.size() - 1)) : 0.0;
      s.points.push_back({value, mean, sd, means.size()});
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_plot_csv(const std::vector<PlotSeries>& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "architecture,variable,value,mean_latency_ms,std_latency_ms,runs\n";
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      out << scenario::to_string(s.architecture) << ',' << s.variable << ',' << format_number(p.value) << ','
          << format_number(p.mean_latency_ms) << ',' << format_number(p.std_latency_ms) << ',' << p.runs
          << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace fogsim::harness
