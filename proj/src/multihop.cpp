#include "mmp/multihop.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace mmp {

int Tree::degree(int node) const {
  return static_cast<int>(children[node].size()) + (parent[node] >= 0 ? 1 : 0);
}

double Tree::total_weight_km() const {
  double w = 0.0;
  for (const TreeEdge& e : edges) w += e.weight_km;
  return w;
}

std::size_t Tree::edge_of(int node) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].child == node) return i;
  }
  throw std::out_of_range("node has no parent edge");
}

std::vector<std::size_t> Tree::bfs_edge_order() const {
  std::vector<std::size_t> edge_index(parent.size(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) edge_index[edges[i].child] = i;

  std::vector<std::size_t> order;
  order.reserve(edges.size());
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int c : children[u]) {
      order.push_back(edge_index[c]);
      queue.push_back(c);
    }
  }
  return order;
}

std::optional<Tree> build_constrained_mwst(const Scenario& s, const RadioConfig& cfg,
                                           int max_hops, int max_degree) {
  if (max_hops < 1) throw std::invalid_argument("max_hops must be at least 1");
  if (max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");

  const int n = static_cast<int>(s.nodes.size());
  Tree t;
  t.parent.assign(n, -1);
  t.depth.assign(n, 0);
  t.children.assign(n, {});
  std::vector<bool> in_tree(n, false);
  in_tree[0] = true;

  for (int step = 1; step < n; ++step) {
    int best_u = -1;
    int best_v = -1;
    double best_d = std::numeric_limits<double>::infinity();
    // Ascending (u, v) scan with a strict comparison keeps the smaller pair on ties.
    for (int u = 0; u < n; ++u) {
      if (!in_tree[u] || t.depth[u] + 1 > max_hops || t.degree(u) >= max_degree) continue;
      for (int v = 0; v < n; ++v) {
        if (in_tree[v]) continue;
        const double d = distance_km(s.nodes[u], s.nodes[v]);
        if (d < best_d) {
          best_d = d;
          best_u = u;
          best_v = v;
        }
      }
    }
    if (best_u < 0) return std::nullopt;

    in_tree[best_v] = true;
    t.parent[best_v] = best_u;
    t.depth[best_v] = t.depth[best_u] + 1;
    auto& kids = t.children[best_u];
    kids.insert(std::upper_bound(kids.begin(), kids.end(), best_v), best_v);
    t.edges.push_back(
        {best_u, best_v, link_metrics(s.nodes[best_u], s.nodes[best_v], cfg), best_d});
  }
  return t;
}

std::vector<double> subtree_demands(const Tree& t, const Scenario& s) {
  std::vector<double> node_load(t.parent.size(), 0.0);
  const auto order = t.bfs_edge_order();
  // Reverse BFS visits every child edge before its parent edge.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const TreeEdge& e = t.edges[*it];
    node_load[e.child] += s.nodes[e.child].demand_mbps * 1e6;
    node_load[e.parent] += node_load[e.child];
  }
  std::vector<double> load(t.edges.size());
  for (std::size_t i = 0; i < t.edges.size(); ++i) load[i] = node_load[t.edges[i].child];
  return load;
}

std::optional<EdgeAllocation> color_edges(const Tree& t, std::span<const std::int64_t> required,
                                          int n_rbs) {
  if (required.size() != t.edges.size())
    throw std::invalid_argument("one requirement per tree edge expected");

  EdgeAllocation out;
  out.required_rbs.assign(required.begin(), required.end());
  out.rb_sets.assign(t.edges.size(), {});
  // used[node][rb]: rb already taken by a coloured edge incident to node
  std::vector<std::vector<char>> used(t.parent.size(), std::vector<char>(n_rbs, 0));

  for (std::size_t idx : t.bfs_edge_order()) {
    const TreeEdge& e = t.edges[idx];
    const std::int64_t need = required[idx];
    if (need < 0) throw std::invalid_argument("negative RB requirement");
    auto& set = out.rb_sets[idx];
    for (int rb = 0; rb < n_rbs && static_cast<std::int64_t>(set.size()) < need; ++rb) {
      if (used[e.parent][rb] || used[e.child][rb]) continue;
      set.push_back(rb);
    }
    if (static_cast<std::int64_t>(set.size()) < need) return std::nullopt;
    for (int rb : set) {
      used[e.parent][rb] = 1;
      used[e.child][rb] = 1;
    }
  }
  return out;
}

std::optional<std::vector<std::int64_t>> required_rbs_at(const Tree& t,
                                                         std::span<const double> edge_load_bps,
                                                         double alpha) {
  std::vector<std::int64_t> req(t.edges.size());
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto r = rbs_required(alpha * edge_load_bps[i], t.edges[i].link.per_rb_rate_bps);
    if (!r) return std::nullopt;
    req[i] = *r;
  }
  return req;
}

namespace {

std::optional<EdgeAllocation> try_alpha(const Tree& t, std::span<const double> load, double alpha,
                                        int n_rbs) {
  const auto req = required_rbs_at(t, load, alpha);
  if (!req) return std::nullopt;
  auto alloc = color_edges(t, *req, n_rbs);
  if (alloc) alloc->alpha = alpha;
  return alloc;
}

}  // namespace

MultihopPlan plan_multihop(const Scenario& s, const RadioConfig& cfg, int max_hops,
                           int max_degree) {
  MultihopPlan plan;
  EvalResult& r = plan.result;
  r.scenario_seed = s.seed;
  r.strategy = max_hops <= 2 ? Strategy::mh2 : Strategy::mh4;
  r.total_demand_mbps = s.total_demand_mbps();
  r.served_per_ap_mbps.assign(s.n_aps(), 0.0);

  plan.tree = build_constrained_mwst(s, cfg, max_hops, max_degree);
  if (!plan.tree) {
    r.outcome = Outcome::unreachable;
    r.alpha = 0.0;
    return plan;
  }
  const Tree& tree = *plan.tree;
  const auto load = subtree_demands(tree, s);

  double alpha = 1.0;
  plan.allocation = try_alpha(tree, load, 1.0, cfg.n_rbs);
  if (plan.allocation) {
    r.feasible = true;
    r.outcome = Outcome::served;
  } else {
    // Colouring success is monotone in alpha: requirements only shrink.
    double lo = 0.0;
    double hi = 1.0;
    plan.allocation = try_alpha(tree, load, 0.0, cfg.n_rbs);
    while (hi - lo > kAlphaPrecision) {
      const double mid = 0.5 * (lo + hi);
      if (auto a = try_alpha(tree, load, mid, cfg.n_rbs)) {
        lo = mid;
        plan.allocation = std::move(a);
      } else {
        hi = mid;
      }
    }
    alpha = lo;
    r.outcome = Outcome::overloaded;
  }

  r.alpha = alpha;
  for (int ap = 1; ap <= s.n_aps(); ++ap) {
    const double mbps = alpha * s.nodes[ap].demand_mbps;
    r.served_per_ap_mbps[ap - 1] = mbps;
    r.served_mbps += mbps;
  }
  if (r.feasible) r.served_mbps = r.total_demand_mbps;
  return plan;
}

EvalResult evaluate_multihop(const Scenario& s, const RadioConfig& cfg, int max_hops) {
  return plan_multihop(s, cfg, max_hops, kDefaultMaxDegree).result;
}

Topology to_topology(const Tree& t, const EdgeAllocation* allocation) {
  Topology topo;
  topo.kind = TopologyKind::mh_tree;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const TreeEdge& e = t.edges[i];
    const std::int64_t rbs = allocation ? allocation->required_rbs[i] : 0;
    topo.edges.push_back({e.parent, e.child, e.link, static_cast<double>(rbs), rbs});
  }
  return topo;
}

}  // namespace mmp
