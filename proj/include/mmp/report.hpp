#pragma once

#include <string>
#include <vector>

#include "mmp/eval.hpp"

namespace mmp {

/// Number formatting shared by every CSV: %.6g in the C locale.
std::string format_number(double v);

std::string results_csv(const std::vector<BatchRecord>& records);
std::string summary_csv(const BatchSummary& summary);
/// CDF rows for one strategy: n_aps, area_km, served_mbps, cdf.
std::string cdf_csv(const BatchSummary& summary, Strategy strategy);

}  // namespace mmp
