#include "mmp/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mmp::lp {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

void validate(const Model& m) {
  if (m.n_vars < 0) throw InvalidModel("negative variable count");
  const auto n = static_cast<std::size_t>(m.n_vars);
  if (m.objective.size() != n) throw InvalidModel("objective length differs from n_vars");
  if (!m.bounds.empty() && m.bounds.size() != n)
    throw InvalidModel("bounds length differs from n_vars");
  for (double c : m.objective) {
    if (!std::isfinite(c)) throw InvalidModel("non-finite objective coefficient");
  }
  for (std::size_t r = 0; r < m.constraints.size(); ++r) {
    const Constraint& c = m.constraints[r];
    if (c.coeffs.size() != n)
      throw InvalidModel("constraint " + std::to_string(r) + " has the wrong length");
    if (!std::isfinite(c.rhs)) throw InvalidModel("non-finite right-hand side");
    for (double a : c.coeffs) {
      if (!std::isfinite(a)) throw InvalidModel("non-finite constraint coefficient");
    }
  }
  for (const Bound& b : m.bounds) {
    if (!std::isfinite(b.lower)) throw InvalidModel("lower bounds must be finite");
    if (std::isnan(b.upper) || b.upper == -std::numeric_limits<double>::infinity())
      throw InvalidModel("invalid upper bound");
    if (b.lower > b.upper) throw InvalidModel("lower bound exceeds upper bound");
  }
}

namespace {

/// Dense tableau: `rows` constraint rows plus one cost row at index `rows`,
/// each with `cols` coefficients followed by the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t w = cols_ + 1;
    double* prow = &data_[pr * w];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < w; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * w];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < w; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  void drop_row(std::size_t r) {
    const std::size_t w = cols_ + 1;
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * w),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  /// Rewrite the cost row as reduced costs of `c` against the current basis.
  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost(j) = j < cols_ ? c[j] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost(j) -= cb * at(r, j);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class Phase { done, unbounded, iteration_limit };

/// Primal simplex on the current cost row with Bland's rule. Columns with
/// `allowed[j] == false` never enter.
Phase iterate(Tableau& t, const std::vector<bool>& allowed, const Options& opt, int& iterations) {
  for (;;) {
    if (iterations >= opt.max_iterations) return Phase::iteration_limit;
    std::size_t enter = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (allowed[j] && t.cost(j) < -opt.pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter == t.cols()) return Phase::done;

    std::size_t leave = t.rows();
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      if (leave == t.rows() || ratio < best_ratio ||
          (ratio == best_ratio && t.basis()[r] < t.basis()[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == t.rows()) return Phase::unbounded;
    t.pivot(leave, enter);
    ++iterations;
  }
}

}  // namespace

Solution solve(const Model& m, const Options& opt) {
  validate(m);
  const auto n = static_cast<std::size_t>(m.n_vars);
  std::vector<Bound> bounds = m.bounds.empty() ? std::vector<Bound>(n) : m.bounds;

  // Rows in y = x - lower >= 0, with finite upper bounds as extra rows and
  // every right-hand side made non-negative.
  struct Row {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<Row> rows;
  rows.reserve(m.constraints.size() + n);
  for (const Constraint& c : m.constraints) {
    double b = c.rhs;
    for (std::size_t j = 0; j < n; ++j) b -= c.coeffs[j] * bounds[j].lower;
    rows.push_back({c.coeffs, c.rel, b});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(bounds[j].upper)) continue;
    std::vector<double> a(n, 0.0);
    a[j] = 1.0;
    rows.push_back({std::move(a), Relation::le, bounds[j].upper - bounds[j].lower});
  }
  for (Row& r : rows) {
    if (r.b < 0.0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      if (r.rel == Relation::le) {
        r.rel = Relation::ge;
      } else if (r.rel == Relation::ge) {
        r.rel = Relation::le;
      }
    }
  }

  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const Row& r : rows) {
    if (r.rel != Relation::eq) ++n_slack;
    if (r.rel != Relation::le) ++n_art;
  }
  const std::size_t first_art = n + n_slack;
  const std::size_t cols = first_art + n_art;
  Tableau t(rows.size(), cols);

  std::size_t slack = n;
  std::size_t art = first_art;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = r.a[j];
    t.rhs(i) = r.b;
    if (r.rel == Relation::le) {
      t.at(i, slack) = 1.0;
      t.basis()[i] = slack++;
    } else {
      if (r.rel == Relation::ge) t.at(i, slack++) = -1.0;
      t.at(i, art) = 1.0;
      t.basis()[i] = art++;
    }
  }

  Solution sol;
  std::vector<bool> allowed(cols, true);

  if (n_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1.0;
    t.price(phase1);
    if (iterate(t, allowed, opt, sol.iterations) != Phase::done) {
      // Phase 1 is bounded below by zero; only the iteration cap lands here.
      sol.status = Status::infeasible;
      return sol;
    }
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.basis()[r] >= first_art) infeasibility += t.rhs(r);
    }
    if (infeasibility > opt.feasibility_tol) {
      sol.status = Status::infeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis; rows where that is
    // impossible are linearly dependent and can go.
    for (std::size_t r = t.rows(); r-- > 0;) {
      if (t.basis()[r] < first_art) continue;
      std::size_t enter = first_art;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (std::abs(t.at(r, j)) > opt.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter < first_art) {
        t.pivot(r, enter);
      } else {
        t.drop_row(r);
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  }

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = m.objective[j];
  t.price(phase2);
  const Phase p = iterate(t, allowed, opt, sol.iterations);
  if (p == Phase::unbounded) {
    sol.status = Status::unbounded;
    return sol;
  }
  if (p == Phase::iteration_limit) {
    sol.status = Status::infeasible;
    return sol;
  }

  sol.status = Status::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < n) sol.x[t.basis()[r]] = t.rhs(r);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double v = sol.x[j] + bounds[j].lower;
    // Snap round-off just outside a bound back onto it.
    if (v < bounds[j].lower && bounds[j].lower - v <= opt.feasibility_tol) v = bounds[j].lower;
    if (v > bounds[j].upper && v - bounds[j].upper <= opt.feasibility_tol) v = bounds[j].upper;
    sol.x[j] = v;
    sol.objective_value += m.objective[j] * v;
  }
  return sol;
}

double max_residual(const Model& m, const std::vector<double>& x) {
  double worst = 0.0;
  for (const Constraint& c : m.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coeffs[j] * x[j];
    double v = 0.0;
    switch (c.rel) {
      case Relation::le: v = lhs - c.rhs; break;
      case Relation::ge: v = c.rhs - lhs; break;
      case Relation::eq: v = std::abs(lhs - c.rhs); break;
    }
    worst = std::max(worst, v / (1.0 + std::abs(c.rhs)));
  }
  for (std::size_t j = 0; j < m.bounds.size(); ++j) {
    worst = std::max(worst, m.bounds[j].lower - x[j]);
    worst = std::max(worst, x[j] - m.bounds[j].upper);
  }
  if (m.bounds.empty()) {
    for (double v : x) worst = std::max(worst, -v);
  }
  return worst;
}

std::string to_text(const Model& m, const std::vector<std::string>& var_names) {
  auto name = [&](std::size_t j) {
    return j < var_names.size() ? var_names[j] : "x" + std::to_string(j);
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  auto linear = [&](const std::vector<double>& a) {
    std::string s;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] == 0.0) continue;
      s += (s.empty() ? (a[j] < 0 ? "-" : "") : (a[j] < 0 ? " - " : " + "));
      if (std::abs(a[j]) != 1.0) s += num(std::abs(a[j])) + " ";
      s += name(j);
    }
    return s.empty() ? std::string("0") : s;
  };

  std::ostringstream out;
  out << "minimize\n  " << linear(m.objective) << "\nsubject to\n";
  for (std::size_t r = 0; r < m.constraints.size(); ++r) {
    const Constraint& c = m.constraints[r];
    const char* rel = c.rel == Relation::le ? "<=" : c.rel == Relation::ge ? ">=" : "=";
    out << "  c" << r << ": " << linear(c.coeffs) << ' ' << rel << ' ' << num(c.rhs) << '\n';
  }
  out << "bounds\n";
  for (std::size_t j = 0; j < static_cast<std::size_t>(m.n_vars); ++j) {
    const Bound b = m.bounds.empty() ? Bound{} : m.bounds[j];
    out << "  " << num(b.lower) << " <= " << name(j) << " <= "
        << (std::isfinite(b.upper) ? num(b.upper) : std::string("inf")) << '\n';
  }
  return out.str();
}

}  // namespace mmp::lp
