#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mmp/radio.hpp"
#include "mmp/scenario.hpp"
#include "mmp/topology.hpp"

namespace mmp {

class EmptySelection : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class ServedFilter {
  all,
  mutually_feasible,  // keep scenarios feasible under every strategy in the batch
};

/// One Monte Carlo experiment: every (n_aps, area) pair gets n_scenarios
/// scenarios, and every strategy is evaluated on the same scenarios.
struct BatchSpec {
  RadioConfig radio;
  std::map<Strategy, RadioConfig> radio_overrides;  // per-strategy radio, e.g. antenna gains
  std::vector<int> n_aps_list{2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> area_list{10.0};
  int n_scenarios = 2000;
  std::vector<Strategy> strategies{Strategy::pmp, Strategy::mh2, Strategy::mh4, Strategy::lp};
  std::uint64_t master_seed = 1;
  std::vector<double> demand_set_mbps = default_demand_set();
  PopPlacement pop_placement = PopPlacement::random;
  bool lp_scale_on_infeasible = false;
  ServedFilter filter = ServedFilter::all;
  unsigned threads = 0;  // 0: MMP_THREADS or hardware concurrency

  const RadioConfig& radio_for(Strategy s) const;
};

/// Throws std::invalid_argument on an unusable spec.
void validate(const BatchSpec& spec);

struct BatchRecord {
  std::uint64_t master_seed = 0;
  std::size_t scenario_index = 0;
  std::uint64_t scenario_seed = 0;
  std::uint64_t scenario_hash = 0;
  int n_aps = 0;
  double area_km = 0.0;
  EvalResult result;
};

struct GroupSummary {
  int n_aps = 0;
  double area_km = 0.0;
  Strategy strategy = Strategy::pmp;
  std::size_t scenarios = 0;
  double feasible_pct = 0.0;
  std::size_t served_count = 0;  // records behind the mean and the CDF
  double mean_served_mbps = 0.0;
  double mean_demand_mbps = 0.0;
  std::vector<double> cdf_samples;  // sorted served loads
};

struct BatchSummary {
  std::vector<GroupSummary> groups;  // by (n_aps, area) in BatchSpec order, then strategy
};

struct BatchOutput {
  std::vector<BatchRecord> records;  // by scenario index, then strategy in BatchSpec order
  BatchSummary summary;
};

/// Scenario k (0-based across all groups, groups in n_aps-major order) is
/// generated from derive_seed(master_seed, k).
BatchOutput run_batch(const BatchSpec& spec);

/// Evaluate one strategy on one scenario.
EvalResult evaluate(const Scenario& s, Strategy strategy, const RadioConfig& cfg,
                    bool lp_scale_on_infeasible = false);

struct RecordSelection {
  std::optional<Strategy> strategy;
  std::optional<int> n_aps;
  std::optional<double> area_km;
  ServedFilter filter = ServedFilter::all;
};

struct Cdf {
  std::vector<double> samples;                   // sorted
  std::vector<std::pair<double, double>> points;  // (x, F(x)) at each distinct x
};

/// Empirical CDF of served load over the selected records. Records excluded
/// from served aggregation (LP-infeasible) never contribute.
Cdf served_load_cdf(const std::vector<BatchRecord>& records, const RecordSelection& sel);

/// Percentage of the strategy's records that are feasible.
double feasibility_rate(const std::vector<BatchRecord>& records, Strategy strategy);

/// Scenario indices feasible under every strategy that appears for them.
std::vector<bool> mutually_feasible_mask(const std::vector<BatchRecord>& records);

/// MMP_THREADS if set to a positive integer, else hardware concurrency (>= 1).
unsigned default_thread_count();

}  // namespace mmp
