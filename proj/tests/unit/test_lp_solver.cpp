#include <doctest.h>

#include <cmath>
#include <random>

#include "mmp/lp_solver.hpp"
#include "support/oracles.hpp"

using namespace mmp::lp;

TEST_CASE("single variable with a lower constraint") {
  Model m(1);
  m.objective = {1.0};
  m.bounds = {{0.0, 10.0}};
  m.add({1.0}, Relation::ge, 3.0);
  const Solution s = solve(m);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.x[0] == doctest::Approx(3.0));
  CHECK(s.objective_value == doctest::Approx(3.0));
}

TEST_CASE("unbounded and infeasible detection") {
  Model up(1);
  up.objective = {-1.0};
  up.add({1.0}, Relation::ge, 0.0);
  CHECK(solve(up).status == Status::unbounded);

  Model inf(2);
  inf.objective = {1.0, 1.0};
  inf.add({1.0, 1.0}, Relation::ge, 4.0);
  inf.add({1.0, 0.0}, Relation::le, 1.0);
  inf.add({0.0, 1.0}, Relation::le, 1.0);
  CHECK(solve(inf).status == Status::infeasible);
}

TEST_CASE("mixed relations, shifted lower bounds and negative right-hand sides") {
  // min 2x + 3y - z  s.t. x + y + z = 10, x - y >= -2, z <= 4, x >= 1, y in [0.5, 8]
  Model m(3);
  m.objective = {2.0, 3.0, -1.0};
  m.bounds = {{1.0, INFINITY}, {0.5, 8.0}, {0.0, INFINITY}};
  m.add({1.0, 1.0, 1.0}, Relation::eq, 10.0);
  m.add({1.0, -1.0, 0.0}, Relation::ge, -2.0);
  m.add({0.0, 0.0, 1.0}, Relation::le, 4.0);
  const Solution s = solve(m);
  REQUIRE(s.status == Status::optimal);
  // z = 4 at its cap, x + y = 6 with x as large as cheap allows: x = 5.5, y = 0.5.
  CHECK(s.x[0] == doctest::Approx(5.5));
  CHECK(s.x[1] == doctest::Approx(0.5));
  CHECK(s.x[2] == doctest::Approx(4.0));
  CHECK(s.objective_value == doctest::Approx(2 * 5.5 + 3 * 0.5 - 4));
  CHECK(max_residual(m, s.x) <= 1e-9);
}

TEST_CASE("redundant equalities are tolerated") {
  Model m(2);
  m.objective = {1.0, 2.0};
  m.add({1.0, 1.0}, Relation::eq, 3.0);
  m.add({2.0, 2.0}, Relation::eq, 6.0);
  const Solution s = solve(m);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.x[0] == doctest::Approx(3.0));
  CHECK(s.objective_value == doctest::Approx(3.0));
}

TEST_CASE("degenerate cycling-prone instance terminates") {
  // Beale's classic cycling example (as a minimisation).
  Model m(4);
  m.objective = {-0.75, 150.0, -0.02, 6.0};
  m.add({0.25, -60.0, -0.04, 9.0}, Relation::le, 0.0);
  m.add({0.5, -90.0, -0.02, 3.0}, Relation::le, 0.0);
  m.add({0.0, 0.0, 1.0, 0.0}, Relation::le, 1.0);
  const Solution s = solve(m);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.objective_value == doctest::Approx(-0.05));
}

TEST_CASE("invalid models") {
  Model m(2);
  m.objective = {1.0};
  CHECK_THROWS_AS(solve(m), InvalidModel);
  Model n(1);
  n.add({NAN}, Relation::le, 1.0);
  CHECK_THROWS_AS(solve(n), InvalidModel);
  Model b(1);
  b.bounds = {{2.0, 1.0}};
  CHECK_THROWS_AS(solve(b), InvalidModel);
  Model free_var(1);
  free_var.bounds = {{-INFINITY, 1.0}};
  CHECK_THROWS_AS(solve(free_var), InvalidModel);
  Model wrong_row(2);
  wrong_row.add({1.0}, Relation::le, 1.0);
  CHECK_THROWS_AS(solve(wrong_row), InvalidModel);
}

TEST_CASE("random small LPs agree with vertex enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(0.0, 3.0);
  int optimal = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int rows = 1 + static_cast<int>(rng() % 8);
    Model m(n);
    for (auto& c : m.objective) c = coef(rng);
    m.bounds.assign(n, {0.0, 0.0});
    std::vector<double> witness(n);
    for (int j = 0; j < n; ++j) {
      witness[j] = pos(rng);
      m.bounds[j].upper = witness[j] + pos(rng) + 0.1;
    }
    for (int r = 0; r < rows; ++r) {
      std::vector<double> a(n);
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) {
        a[j] = coef(rng);
        lhs += a[j] * witness[j];
      }
      const auto kind = rng() % 3;
      const Relation rel = kind == 0 ? Relation::le : kind == 1 ? Relation::ge : Relation::eq;
      const double rhs = rel == Relation::le ? lhs + pos(rng) : rel == Relation::ge ? lhs - pos(rng)
                                                                                    : lhs;
      m.add(std::move(a), rel, rhs);
    }
    const Solution s = solve(m);
    REQUIRE(s.status == Status::optimal);
    CHECK(max_residual(m, s.x) <= 1e-9);
    const auto best = oracle::vertex_enumeration(m);
    REQUIRE(best);
    CHECK(s.objective_value == doctest::Approx(*best).epsilon(1e-6));
    ++optimal;
    // Same model, same answer.
    const Solution again = solve(m);
    CHECK(again.x == s.x);
  }
  CHECK(optimal == 150);
}

TEST_CASE("to_text lists every row") {
  Model m(2);
  m.objective = {1.0, -2.0};
  m.bounds = {{0.0, 1.0}, {0.0, INFINITY}};
  m.add({1.0, 3.0}, Relation::ge, 4.0);
  const std::string text = to_text(m, {"a", "b"});
  CHECK(text.find("minimize") != std::string::npos);
  CHECK(text.find("a - 2 b") != std::string::npos);
  CHECK(text.find("a + 3 b >= 4") != std::string::npos);
  CHECK(text.find("0 <= b <= inf") != std::string::npos);
}
