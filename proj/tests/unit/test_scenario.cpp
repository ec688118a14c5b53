#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mmp/rng.hpp"
#include "mmp/scenario.hpp"

using namespace mmp;

TEST_CASE("generate_scenario rejects empty or degenerate inputs") {
  const auto& set = default_demand_set();
  CHECK_THROWS_AS(generate_scenario(0, 10.0, set, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(3, 0.0, set, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(3, -2.0, set, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(3, 10.0, std::vector<double>{}, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(3, 10.0, std::vector<double>{2.0, 0.0}, 1),
                  std::invalid_argument);
}

TEST_CASE("generate_scenario is a pure function of its arguments") {
  const auto a = generate_scenario(10, 10.0, default_demand_set(), 42);
  const auto b = generate_scenario(10, 10.0, default_demand_set(), 42);
  CHECK(a == b);
  CHECK(save_scenario(a) == save_scenario(b));
  CHECK_FALSE(a == generate_scenario(10, 10.0, default_demand_set(), 43));
}

TEST_CASE("generated scenario respects placement and demand membership") {
  const auto s = generate_scenario(10, 10.0, default_demand_set(), 42);
  REQUIRE(s.nodes.size() == 11);
  CHECK(s.n_aps() == 10);
  CHECK(s.seed == 42);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const Node& n = s.nodes[i];
    CHECK(n.id == static_cast<int>(i));
    CHECK(n.x_km >= 0.0);
    CHECK(n.x_km <= 10.0);
    CHECK(n.y_km >= 0.0);
    CHECK(n.y_km <= 10.0);
    if (i == 0) {
      CHECK(n.demand_mbps == 0.0);
    } else {
      const auto& set = default_demand_set();
      CHECK(std::find(set.begin(), set.end(), n.demand_mbps) != set.end());
    }
  }
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("documented draw order: centring the PoP leaves the APs untouched") {
  const auto r = generate_scenario(6, 8.0, default_demand_set(), 7, PopPlacement::random);
  const auto c = generate_scenario(6, 8.0, default_demand_set(), 7, PopPlacement::center);
  CHECK(c.nodes[0].x_km == 4.0);
  CHECK(c.nodes[0].y_km == 4.0);
  for (int i = 1; i <= 6; ++i) CHECK(r.nodes[i] == c.nodes[i]);

  // Reproduce the stream by hand: PoP xy, AP xy in id order, then demand indices.
  Rng rng(7);
  std::vector<double> xs;
  for (int i = 0; i < 14; ++i) xs.push_back(rng.uniform01() * 8.0);
  for (int i = 0; i <= 6; ++i) {
    CHECK(r.nodes[i].x_km == xs[2 * i]);
    CHECK(r.nodes[i].y_km == xs[2 * i + 1]);
  }
  for (int i = 1; i <= 6; ++i) CHECK(r.nodes[i].demand_mbps == default_demand_set()[rng.index(5)]);
}

TEST_CASE("uniformity of positions and demands over 1e5 draws") {
  // One AP per scenario keeps this at 1e5 independent positions and demands.
  const int draws = 100000;
  const double area = 10.0;
  double sum_x = 0.0;
  std::map<double, int> freq;
  Rng seeds(2024);
  for (int k = 0; k < draws; ++k) {
    const auto s = generate_scenario(1, area, default_demand_set(), seeds.index(~0ULL));
    sum_x += s.nodes[1].x_km;
    ++freq[s.nodes[1].demand_mbps];
  }
  CHECK(std::abs(sum_x / draws - area / 2) <= 0.01 * area / 2);
  REQUIRE(freq.size() == 5);
  for (const auto& [d, count] : freq) CHECK(std::abs(double(count) / draws - 0.2) <= 0.01);
}

TEST_CASE("save/load round-trip and canonical bytes") {
  for (std::uint64_t seed : {1ULL, 99ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    const auto s = generate_scenario(7, 12.5, default_demand_set(), seed);
    const std::string bytes = save_scenario(s);
    const Scenario back = load_scenario(bytes);
    CHECK(back == s);
    CHECK(back.seed == s.seed);
    CHECK(save_scenario(back) == bytes);
    CHECK(bytes.find('\r') == std::string::npos);
    CHECK(bytes.back() == '\n');
  }
}

TEST_CASE("canonical encoding sorts keys") {
  Scenario s;
  s.area_km = 2.0;
  s.seed = 5;
  s.demand_set_mbps = {2.0};
  s.nodes = {{0, 1.0, 1.0, 0.0}, {1, 0.5, 1.5, 2.0}};
  const std::string bytes = save_scenario(s);
  CHECK(bytes.find("\"area_km\"") < bytes.find("\"demand_set_mbps\""));
  CHECK(bytes.find("\"demand_set_mbps\"") < bytes.find("\"nodes\""));
  CHECK(bytes.find("\"nodes\"") < bytes.find("\"seed\""));
  CHECK(bytes.find("\"demand_mbps\"") < bytes.find("\"id\""));
}

TEST_CASE("load_scenario error paths") {
  CHECK_THROWS_AS(load_scenario(""), ParseError);
  CHECK_THROWS_AS(load_scenario("{not json"), ParseError);
  CHECK_THROWS_AS(load_scenario("[1,2]"), ParseError);
  CHECK_THROWS_AS(load_scenario(R"({"area_km": 1})"), ParseError);

  const std::string pop_with_demand = R"({"area_km": 10, "seed": 1, "demand_set_mbps": [2, 5],
    "nodes": [{"id": 0, "x_km": 1, "y_km": 1, "demand_mbps": 5},
              {"id": 1, "x_km": 2, "y_km": 2, "demand_mbps": 2}]})";
  CHECK_THROWS_AS(load_scenario(pop_with_demand), ValidationError);

  const std::string outside = R"({"area_km": 10, "seed": 1, "demand_set_mbps": [2],
    "nodes": [{"id": 0, "x_km": 1, "y_km": 1, "demand_mbps": 0},
              {"id": 1, "x_km": 12, "y_km": 2, "demand_mbps": 2}]})";
  CHECK_THROWS_AS(load_scenario(outside), ValidationError);

  const std::string gap = R"({"area_km": 10, "seed": 1, "demand_set_mbps": [2],
    "nodes": [{"id": 0, "x_km": 1, "y_km": 1, "demand_mbps": 0},
              {"id": 2, "x_km": 2, "y_km": 2, "demand_mbps": 2}]})";
  CHECK_THROWS_AS(load_scenario(gap), ValidationError);

  const std::string only_pop = R"({"area_km": 10, "seed": 1, "demand_set_mbps": [2],
    "nodes": [{"id": 0, "x_km": 1, "y_km": 1, "demand_mbps": 0}]})";
  CHECK_THROWS_AS(load_scenario(only_pop), ValidationError);

  const std::string off_set = R"({"area_km": 10, "seed": 1, "demand_set_mbps": [2],
    "nodes": [{"id": 0, "x_km": 1, "y_km": 1, "demand_mbps": 0},
              {"id": 1, "x_km": 2, "y_km": 2, "demand_mbps": 3}]})";
  CHECK_THROWS_AS(load_scenario(off_set), ValidationError);
}

TEST_CASE("scenario_hash distinguishes scenarios") {
  const auto a = generate_scenario(5, 10.0, default_demand_set(), 1);
  const auto b = generate_scenario(5, 10.0, default_demand_set(), 2);
  CHECK(scenario_hash(a) == scenario_hash(load_scenario(save_scenario(a))));
  CHECK(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("derive_seed gives distinct child seeds") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}
