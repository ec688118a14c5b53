#include "mmp/report.hpp"

#include <cstdio>
#include <sstream>

namespace mmp {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string results_csv(const std::vector<BatchRecord>& records) {
  std::ostringstream out;
  out << "master_seed,scenario_index,scenario_seed,n_aps,area_km,topology,feasible,alpha,"
         "total_demand_mbps,served_mbps\n";
  for (const BatchRecord& r : records) {
    out << r.master_seed << ',' << r.scenario_index << ',' << r.scenario_seed << ',' << r.n_aps
        << ',' << format_number(r.area_km) << ',' << to_string(r.result.strategy) << ','
        << (r.result.feasible ? 1 : 0) << ','
        << (r.result.alpha ? format_number(*r.result.alpha) : std::string()) << ','
        << format_number(r.result.total_demand_mbps) << ','
        << format_number(r.result.served_mbps) << '\n';
  }
  return out.str();
}

std::string summary_csv(const BatchSummary& summary) {
  std::ostringstream out;
  out << "n_aps,area_km,topology,scenarios,feasible_pct,served_count,mean_served_mbps,"
         "mean_demand_mbps\n";
  for (const GroupSummary& g : summary.groups) {
    out << g.n_aps << ',' << format_number(g.area_km) << ',' << to_string(g.strategy) << ','
        << g.scenarios << ',' << format_number(g.feasible_pct) << ',' << g.served_count << ','
        << format_number(g.mean_served_mbps) << ',' << format_number(g.mean_demand_mbps) << '\n';
  }
  return out.str();
}

std::string cdf_csv(const BatchSummary& summary, Strategy strategy) {
  // One row per sorted sample; cdf is F(x) = #{samples <= x} / n, so tied
  // samples share a value and the distinct rows form the step function.
  std::ostringstream out;
  out << "n_aps,area_km,served_mbps,cdf\n";
  for (const GroupSummary& g : summary.groups) {
    if (g.strategy != strategy) continue;
    const auto& xs = g.cdf_samples;
    const double n = static_cast<double>(xs.size());
    std::size_t upto = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (upto <= i) {
        upto = i + 1;
        while (upto < xs.size() && xs[upto] == xs[i]) ++upto;
      }
      out << g.n_aps << ',' << format_number(g.area_km) << ',' << format_number(xs[i]) << ','
          << format_number(static_cast<double>(upto) / n) << '\n';
    }
  }
  return out.str();
}

}  // namespace mmp
