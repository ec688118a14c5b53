#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmp/lp_solver.hpp"
#include "mmp/radio.hpp"
#include "mmp/scenario.hpp"
#include "mmp/topology.hpp"

namespace mmp {

/// Square matrix over nodes 0..N, row-major.
class NodeMatrix {
 public:
  NodeMatrix() = default;
  explicit NodeMatrix(int n_nodes, double fill = 0.0)
      : n_(n_nodes), data_(static_cast<std::size_t>(n_nodes) * n_nodes, fill) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// Full-band link capacities C_ij in Mbps from the radio model.
NodeMatrix capacity_matrix_mbps(const Scenario& s, const RadioConfig& cfg);

/// Column of the LP variable for link i -> j (i != j) among (N+1) nodes.
int link_var(int i, int j, int n_nodes);

/// Minimum total link utility LP over all ordered pairs i != j:
///   min  sum beta_ij
///   s.t. sum_j beta_ji C_ji - sum_j beta_ij C_ij >= demand_i   for i != 0
///        sum_j beta_ij <= 1                                      for all i
///        sum_i beta_ij <= 1                                      for all j
///        0 <= beta_ij <= 1
/// Capacities and demands share a unit (Mbps here). Rows are ordered: flow
/// rows for 1..N, then transmit budgets 0..N, then receive budgets 0..N.
lp::Model build_lp_model(const NodeMatrix& capacity, std::span<const double> demand);
lp::Model build_lp_model(const Scenario& s, const RadioConfig& cfg);

/// Link utilities; diagonal is zero.
using UtilityMatrix = NodeMatrix;

/// Optimal utilities, or std::nullopt when no utilities meet the demand.
/// Throws std::logic_error if the solver reports the LP unbounded.
std::optional<UtilityMatrix> solve_topology(const NodeMatrix& capacity,
                                            std::span<const double> demand);
std::optional<UtilityMatrix> solve_topology(const Scenario& s, const RadioConfig& cfg);

inline constexpr double kUtilityEpsilon = 1e-6;

/// Links with utility above kUtilityEpsilon, each carrying utility * n_rbs RBs.
Topology extract_topology(const UtilityMatrix& u, const RadioConfig& cfg, const Scenario& s);

double total_utility(const UtilityMatrix& u);

struct LpPlan {
  std::optional<UtilityMatrix> utility;
  Topology topology;
  EvalResult result;
};

/// Solve and evaluate. With scale_on_infeasible, an infeasible scenario is
/// re-solved at uniformly scaled demand (bisection, kAlphaPrecision-style
/// 1e-3) and reported as partially served; otherwise it is excluded.
LpPlan plan_lp(const Scenario& s, const RadioConfig& cfg, bool scale_on_infeasible = false);

EvalResult evaluate_lp(const Scenario& s, const RadioConfig& cfg, bool scale_on_infeasible = false);

/// Labelled utility matrix, one row per transmitting node.
std::string utility_to_text(const UtilityMatrix& u);

}  // namespace mmp
