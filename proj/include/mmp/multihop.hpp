#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmp/radio.hpp"
#include "mmp/scenario.hpp"
#include "mmp/topology.hpp"

namespace mmp {

inline constexpr int kDefaultMaxDegree = 4;

struct TreeEdge {
  int parent = 0;
  int child = 0;
  LinkMetrics link;
  double weight_km = 0.0;
};

/// Spanning tree rooted at node 0. Edges are kept in insertion order.
struct Tree {
  std::vector<int> parent;  // parent[0] == -1
  std::vector<int> depth;
  std::vector<std::vector<int>> children;  // ascending ids
  std::vector<TreeEdge> edges;

  int node_count() const { return static_cast<int>(parent.size()); }
  /// Tree neighbours, parent included.
  int degree(int node) const;
  double total_weight_km() const;
  /// Index into `edges` of the edge whose child is `node` (node != 0).
  std::size_t edge_of(int node) const;
  /// Edge indices with every parent edge before its child edges and siblings
  /// by ascending child id.
  std::vector<std::size_t> bfs_edge_order() const;
};

/// Prim's algorithm grown from node 0 with two caps: a node may only adopt a
/// child while its depth is below max_hops and its degree is below max_degree.
/// Each step takes the shortest admissible edge, ties to the smaller (u, v).
/// Returns std::nullopt when the caps strand a node.
std::optional<Tree> build_constrained_mwst(const Scenario& s, const RadioConfig& cfg,
                                           int max_hops, int max_degree = kDefaultMaxDegree);

/// Downlink load per edge (aligned with t.edges), in bits/s: the child's own
/// demand plus everything below it.
std::vector<double> subtree_demands(const Tree& t, const Scenario& s);

struct EdgeAllocation {
  std::vector<std::int64_t> required_rbs;  // aligned with Tree::edges
  std::vector<std::vector<int>> rb_sets;   // ascending RB indices
  double alpha = 1.0;
};

/// First-fit multicoloring in BFS order: each edge takes the lowest free RB
/// indices not used by any already coloured edge that shares an endpoint.
/// std::nullopt if some edge cannot be filled from n_rbs.
std::optional<EdgeAllocation> color_edges(const Tree& t, std::span<const std::int64_t> required,
                                          int n_rbs);

/// Per-edge requirement when every AP demand is scaled by alpha; nullopt when
/// a loaded edge has zero rate.
std::optional<std::vector<std::int64_t>> required_rbs_at(const Tree& t,
                                                         std::span<const double> edge_load_bps,
                                                         double alpha);

inline constexpr double kAlphaPrecision = 1e-3;

struct MultihopPlan {
  std::optional<Tree> tree;
  std::optional<EdgeAllocation> allocation;  // at the achieved alpha
  EvalResult result;
};

/// Tree, allocation and served load. On overload, bisects the largest uniform
/// demand scale alpha in [0, 1] (to kAlphaPrecision) at which colouring
/// succeeds.
MultihopPlan plan_multihop(const Scenario& s, const RadioConfig& cfg, int max_hops,
                           int max_degree = kDefaultMaxDegree);

EvalResult evaluate_multihop(const Scenario& s, const RadioConfig& cfg, int max_hops);

/// The tree as an RB-annotated topology.
Topology to_topology(const Tree& t, const EdgeAllocation* allocation);

}  // namespace mmp
