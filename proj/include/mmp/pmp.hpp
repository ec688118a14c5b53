#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmp/radio.hpp"
#include "mmp/scenario.hpp"
#include "mmp/topology.hpp"

namespace mmp {

struct PmpApAllocation {
  int ap = 0;
  std::optional<std::int64_t> required_rbs;  // nullopt: zero-rate link
  std::int64_t allocated_rbs = 0;
  double served_bps = 0.0;
};

struct PmpAllocation {
  std::vector<PmpApAllocation> aps;  // ordered by AP id
  std::int64_t total_required = 0;   // over satisfiable links
  bool feasible = false;
};

/// Star topology: one edge 0 -> i per AP, no RBs assigned yet.
Topology build_pmp(const Scenario& s, const RadioConfig& cfg);

/// Demand-driven allocation from one shared pool of cfg.n_rbs.
///
/// If every link is usable and the requirements fit, each AP gets exactly what
/// it needs. Otherwise the pool is split by Sainte-Lague highest averages over
/// the requirements (seat s of AP i has priority req_i / (2s + 1), ties to the
/// lower id), never giving an AP more than it requires. Zero-rate APs get
/// nothing. Fills in the per-edge RB counts of `t`.
PmpAllocation allocate_pmp(Topology& t, const Scenario& s, const RadioConfig& cfg);

/// Split `pool` over `requirements` with the rule above. Exposed for testing.
std::vector<std::int64_t> apportion(const std::vector<std::int64_t>& requirements,
                                    std::int64_t pool);

EvalResult evaluate_pmp(const Scenario& s, const RadioConfig& cfg);

}  // namespace mmp
