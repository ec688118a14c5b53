#include "mmp/pmp.hpp"

#include <algorithm>
#include <numeric>

namespace mmp {

Topology build_pmp(const Scenario& s, const RadioConfig& cfg) {
  Topology t;
  t.kind = TopologyKind::pmp;
  for (int ap = 1; ap <= s.n_aps(); ++ap)
    t.edges.push_back({0, ap, link_metrics(s.nodes[0], s.nodes[ap], cfg), 0.0, 0});
  return t;
}

std::vector<std::int64_t> apportion(const std::vector<std::int64_t>& requirements,
                                    std::int64_t pool) {
  std::vector<std::int64_t> alloc(requirements.size(), 0);
  const std::int64_t total = std::accumulate(requirements.begin(), requirements.end(),
                                             std::int64_t{0});
  if (total <= pool) return requirements;

  // Highest averages: the next RB goes to the largest req / (2 * alloc + 1).
  // Capped APs drop out, so an AP never receives more than it asked for.
  for (std::int64_t seat = 0; seat < pool; ++seat) {
    std::size_t best = requirements.size();
    for (std::size_t i = 0; i < requirements.size(); ++i) {
      if (alloc[i] >= requirements[i]) continue;
      if (best == requirements.size() ||
          requirements[i] * (2 * alloc[best] + 1) > requirements[best] * (2 * alloc[i] + 1))
        best = i;
    }
    if (best == requirements.size()) break;
    ++alloc[best];
  }
  return alloc;
}

PmpAllocation allocate_pmp(Topology& t, const Scenario& s, const RadioConfig& cfg) {
  PmpAllocation out;
  out.feasible = true;
  std::vector<std::int64_t> requirements;
  for (const TopologyEdge& e : t.edges) {
    const double load_bps = s.nodes[e.to].demand_mbps * 1e6;
    PmpApAllocation ap{e.to, rbs_required(load_bps, e.link.per_rb_rate_bps), 0, 0.0};
    if (ap.required_rbs) {
      out.total_required += *ap.required_rbs;
    } else {
      out.feasible = false;
    }
    requirements.push_back(ap.required_rbs.value_or(0));
    out.aps.push_back(ap);
  }
  if (out.total_required > cfg.n_rbs) out.feasible = false;

  const auto alloc = apportion(requirements, cfg.n_rbs);
  for (std::size_t i = 0; i < out.aps.size(); ++i) {
    PmpApAllocation& ap = out.aps[i];
    TopologyEdge& e = t.edges[i];
    ap.allocated_rbs = alloc[i];
    const double demand_bps = s.nodes[ap.ap].demand_mbps * 1e6;
    ap.served_bps = ap.required_rbs && alloc[i] == *ap.required_rbs
                        ? demand_bps
                        : std::min(demand_bps, alloc[i] * e.link.per_rb_rate_bps);
    e.rbs = static_cast<double>(alloc[i]);
    e.rbs_ceil = alloc[i];
  }
  return out;
}

EvalResult evaluate_pmp(const Scenario& s, const RadioConfig& cfg) {
  Topology t = build_pmp(s, cfg);
  const PmpAllocation a = allocate_pmp(t, s, cfg);

  EvalResult r;
  r.scenario_seed = s.seed;
  r.strategy = Strategy::pmp;
  r.feasible = a.feasible;
  r.outcome = a.feasible ? Outcome::served : Outcome::overloaded;
  r.total_demand_mbps = s.total_demand_mbps();
  for (const PmpApAllocation& ap : a.aps) {
    const double mbps = a.feasible ? s.nodes[ap.ap].demand_mbps : ap.served_bps / 1e6;
    r.served_per_ap_mbps.push_back(mbps);
    r.served_mbps += mbps;
  }
  r.alpha = r.total_demand_mbps > 0.0 ? r.served_mbps / r.total_demand_mbps : 1.0;
  if (a.feasible) {
    r.served_mbps = r.total_demand_mbps;
    r.alpha = 1.0;
  }
  return r;
}

}  // namespace mmp
