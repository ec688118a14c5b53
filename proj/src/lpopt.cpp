#include "mmp/lpopt.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mmp {

NodeMatrix capacity_matrix_mbps(const Scenario& s, const RadioConfig& cfg) {
  const int n = static_cast<int>(s.nodes.size());
  NodeMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double mbps = link_metrics(s.nodes[i], s.nodes[j], cfg).capacity_bps / 1e6;
      c(i, j) = mbps;
      c(j, i) = mbps;
    }
  }
  return c;
}

int link_var(int i, int j, int n_nodes) {
  return i * (n_nodes - 1) + (j < i ? j : j - 1);
}

lp::Model build_lp_model(const NodeMatrix& capacity, std::span<const double> demand) {
  const int n = capacity.size();
  if (static_cast<int>(demand.size()) != n)
    throw std::invalid_argument("demand vector must cover every node");
  const int vars = n * (n - 1);
  lp::Model m(vars);
  m.objective.assign(vars, 1.0);
  m.bounds.assign(vars, {0.0, 1.0});

  for (int i = 1; i < n; ++i) {
    std::vector<double> row(vars, 0.0);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      row[link_var(j, i, n)] += capacity(j, i);
      row[link_var(i, j, n)] -= capacity(i, j);
    }
    m.add(std::move(row), lp::Relation::ge, demand[i]);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(vars, 0.0);
    for (int j = 0; j < n; ++j) {
      if (j != i) row[link_var(i, j, n)] = 1.0;
    }
    m.add(std::move(row), lp::Relation::le, 1.0);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(vars, 0.0);
    for (int i = 0; i < n; ++i) {
      if (i != j) row[link_var(i, j, n)] = 1.0;
    }
    m.add(std::move(row), lp::Relation::le, 1.0);
  }
  return m;
}

namespace {

std::vector<double> demand_vector_mbps(const Scenario& s, double scale = 1.0) {
  std::vector<double> d;
  d.reserve(s.nodes.size());
  for (const Node& n : s.nodes) d.push_back(scale * n.demand_mbps);
  return d;
}

}  // namespace

lp::Model build_lp_model(const Scenario& s, const RadioConfig& cfg) {
  return build_lp_model(capacity_matrix_mbps(s, cfg), demand_vector_mbps(s));
}

std::optional<UtilityMatrix> solve_topology(const NodeMatrix& capacity,
                                            std::span<const double> demand) {
  const lp::Solution sol = lp::solve(build_lp_model(capacity, demand));
  if (sol.status == lp::Status::infeasible) return std::nullopt;
  if (sol.status == lp::Status::unbounded)
    throw std::logic_error("utility LP reported unbounded; its objective is bounded below by 0");

  const int n = capacity.size();
  UtilityMatrix u(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) u(i, j) = sol.x[link_var(i, j, n)];
    }
  }
  return u;
}

std::optional<UtilityMatrix> solve_topology(const Scenario& s, const RadioConfig& cfg) {
  return solve_topology(capacity_matrix_mbps(s, cfg), demand_vector_mbps(s));
}

double total_utility(const UtilityMatrix& u) {
  double sum = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    for (int j = 0; j < u.size(); ++j) sum += u(i, j);
  }
  return sum;
}

Topology extract_topology(const UtilityMatrix& u, const RadioConfig& cfg, const Scenario& s) {
  if (u.size() != static_cast<int>(s.nodes.size()))
    throw std::invalid_argument("utility matrix does not match the scenario");
  Topology t;
  t.kind = TopologyKind::lp_subgraph;
  for (int i = 0; i < u.size(); ++i) {
    for (int j = 0; j < u.size(); ++j) {
      const double b = u(i, j);
      if (!(b >= -kUtilityEpsilon && b <= 1.0 + kUtilityEpsilon))
        throw std::invalid_argument("utility outside [0, 1]");
      if (i == j || b <= kUtilityEpsilon) continue;
      const double rbs = b * cfg.n_rbs;
      // 1e-9 absorbs solver round-off so an exact 20 RBs does not report 21.
      const auto rbs_ceil = static_cast<std::int64_t>(std::ceil(rbs - 1e-9));
      t.edges.push_back({i, j, link_metrics(s.nodes[i], s.nodes[j], cfg), rbs, rbs_ceil});
    }
  }
  return t;
}

LpPlan plan_lp(const Scenario& s, const RadioConfig& cfg, bool scale_on_infeasible) {
  LpPlan plan;
  EvalResult& r = plan.result;
  r.scenario_seed = s.seed;
  r.strategy = Strategy::lp;
  r.total_demand_mbps = s.total_demand_mbps();
  r.served_per_ap_mbps.assign(s.n_aps(), 0.0);
  plan.topology.kind = TopologyKind::lp_subgraph;

  const NodeMatrix cap = capacity_matrix_mbps(s, cfg);
  plan.utility = solve_topology(cap, demand_vector_mbps(s));
  double alpha = 1.0;
  if (plan.utility) {
    r.feasible = true;
    r.outcome = Outcome::served;
  } else {
    r.outcome = Outcome::lp_infeasible;
    if (!scale_on_infeasible) return plan;
    double lo = 0.0;
    double hi = 1.0;
    plan.utility = solve_topology(cap, demand_vector_mbps(s, 0.0));
    while (hi - lo > 1e-3) {
      const double mid = 0.5 * (lo + hi);
      if (auto u = solve_topology(cap, demand_vector_mbps(s, mid))) {
        lo = mid;
        plan.utility = std::move(u);
      } else {
        hi = mid;
      }
    }
    alpha = lo;
  }

  plan.topology = extract_topology(*plan.utility, cfg, s);
  r.alpha = alpha;
  for (int ap = 1; ap <= s.n_aps(); ++ap) {
    const double mbps = alpha * s.nodes[ap].demand_mbps;
    r.served_per_ap_mbps[ap - 1] = mbps;
    r.served_mbps += mbps;
  }
  if (r.feasible) r.served_mbps = r.total_demand_mbps;
  return plan;
}

EvalResult evaluate_lp(const Scenario& s, const RadioConfig& cfg, bool scale_on_infeasible) {
  return plan_lp(s, cfg, scale_on_infeasible).result;
}

std::string utility_to_text(const UtilityMatrix& u) {
  std::ostringstream out;
  char buf[32];
  out << "beta[i->j]";
  for (int j = 0; j < u.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%10d", j);
    out << buf;
  }
  out << '\n';
  for (int i = 0; i < u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%10d", i);
    out << buf;
    for (int j = 0; j < u.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%10.6f", u(i, j));
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mmp
