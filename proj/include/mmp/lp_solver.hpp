#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmp::lp {

class InvalidModel : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Relation { le, ge, eq };

struct Constraint {
  std::vector<double> coeffs;
  Relation rel = Relation::le;
  double rhs = 0.0;
};

struct Bound {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// minimize objective . x  subject to constraints and per-variable bounds.
struct Model {
  int n_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<Bound> bounds;  // empty means [0, inf) for every variable

  explicit Model(int n = 0) : n_vars(n), objective(n, 0.0) {}

  void add(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  int iterations = 0;
};

struct Options {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-7;
  int max_iterations = 1'000'000;
};

/// Throws InvalidModel on dimension mismatch, non-finite data, lower > upper or
/// an infinite lower bound.
void validate(const Model& m);

/// Dense two-phase primal simplex with Bland's rule. Finite upper bounds become
/// explicit rows; lower bounds are shifted out.
Solution solve(const Model& m, const Options& opt = {});

/// Largest violation of any row or bound by x, each scaled by 1 / (1 + |rhs|).
double max_residual(const Model& m, const std::vector<double>& x);

/// Human-readable listing of the model for debugging.
std::string to_text(const Model& m, const std::vector<std::string>& var_names = {});

std::string_view to_string(Status s);

}  // namespace mmp::lp
