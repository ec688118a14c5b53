#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mmp/radio.hpp"

namespace mmp {

enum class TopologyKind { pmp, mh_tree, lp_subgraph };

/// One directed link. `rbs` is the real-valued share of the RB pool (exact for
/// LP solutions), `rbs_ceil` the integer count reported for the link.
struct TopologyEdge {
  int from = 0;
  int to = 0;
  LinkMetrics link;
  double rbs = 0.0;
  std::int64_t rbs_ceil = 0;
};

struct Topology {
  TopologyKind kind = TopologyKind::pmp;
  std::vector<TopologyEdge> edges;
};

/// The four planning strategies compared in experiments.
enum class Strategy { pmp, mh2, mh4, lp };

std::string_view to_string(Strategy s);
std::string_view to_string(TopologyKind k);
/// Accepts "pmp", "mh2", "mh4", "lp".
std::optional<Strategy> parse_strategy(std::string_view name);

enum class Outcome {
  served,         // every AP fully served
  overloaded,     // partial service
  unreachable,    // multi-hop tree could not span all nodes
  lp_infeasible,  // LP has no solution at full demand
};

std::string_view to_string(Outcome o);

/// Per-scenario outcome of one strategy.
struct EvalResult {
  std::uint64_t scenario_seed = 0;
  Strategy strategy = Strategy::pmp;
  Outcome outcome = Outcome::served;
  bool feasible = false;
  double total_demand_mbps = 0.0;
  double served_mbps = 0.0;
  std::vector<double> served_per_ap_mbps;  // index i-1 for AP i
  // 1 when fully served, the achieved demand scale otherwise. For PMP the
  // served fraction. Absent for LP-infeasible scenarios excluded from
  // served-load aggregation.
  std::optional<double> alpha;

  bool counts_toward_served() const { return alpha.has_value(); }
};

}  // namespace mmp
