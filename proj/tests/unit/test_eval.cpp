#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>

#include "mmp/eval.hpp"
#include "mmp/report.hpp"
#include "mmp/rng.hpp"

using namespace mmp;

namespace {

BatchSpec small_spec() {
  BatchSpec spec;
  spec.n_aps_list = {3, 6};
  spec.area_list = {10.0};
  spec.n_scenarios = 12;
  spec.master_seed = 77;
  spec.threads = 1;
  return spec;
}

BatchRecord record(std::size_t index, Strategy s, bool feasible, double served) {
  BatchRecord r;
  r.scenario_index = index;
  r.n_aps = 10;
  r.area_km = 10.0;
  r.result.strategy = s;
  r.result.feasible = feasible;
  r.result.served_mbps = served;
  r.result.total_demand_mbps = 20.0;
  r.result.alpha = feasible ? 1.0 : 0.5;
  return r;
}

}  // namespace

TEST_CASE("batch is deterministic and thread-count independent") {
  BatchSpec spec = small_spec();
  const auto a = run_batch(spec);
  const auto b = run_batch(spec);
  spec.threads = 4;
  const auto c = run_batch(spec);
  CHECK(results_csv(a.records) == results_csv(b.records));
  CHECK(results_csv(a.records) == results_csv(c.records));
  CHECK(summary_csv(a.summary) == summary_csv(c.summary));
}

TEST_CASE("every strategy sees the same scenarios") {
  BatchSpec spec = small_spec();
  spec.strategies = {Strategy::pmp, Strategy::mh2};
  const auto out = run_batch(spec);
  REQUIRE(out.records.size() == 2 * 2 * 12);
  std::map<std::size_t, int> count;
  for (std::size_t i = 0; i < out.records.size(); i += 2) {
    const auto& x = out.records[i];
    const auto& y = out.records[i + 1];
    CHECK(x.scenario_index == y.scenario_index);
    CHECK(x.scenario_hash == y.scenario_hash);
    CHECK(x.result.strategy == Strategy::pmp);
    CHECK(y.result.strategy == Strategy::mh2);
    ++count[x.scenario_index];
    ++count[y.scenario_index];
  }
  for (const auto& [k, c] : count) CHECK(c == 2);
  CHECK(count.size() == 24);
}

TEST_CASE("scenario seeds follow the documented derivation") {
  const auto out = run_batch(small_spec());
  for (const auto& r : out.records) {
    CHECK(r.scenario_seed == derive_seed(77, r.scenario_index));
    CHECK(r.result.scenario_seed == r.scenario_seed);
    CHECK(r.n_aps == (r.scenario_index < 12 ? 3 : 6));
  }
}

TEST_CASE("summary groups and invariants") {
  const auto out = run_batch(small_spec());
  CHECK(out.summary.groups.size() == 2 * 4);
  for (const auto& g : out.summary.groups) {
    CHECK(g.scenarios == 12);
    CHECK(g.feasible_pct >= 0.0);
    CHECK(g.feasible_pct <= 100.0);
    CHECK(std::is_sorted(g.cdf_samples.begin(), g.cdf_samples.end()));
    CHECK(g.mean_served_mbps <= g.mean_demand_mbps + 1e-9);
  }
  for (const auto& r : out.records) {
    CHECK(r.result.served_mbps <= r.result.total_demand_mbps + 1e-9);
    if (r.result.feasible) CHECK(r.result.served_mbps == r.result.total_demand_mbps);
  }
  // LP dominance carries over to rates.
  CHECK(feasibility_rate(out.records, Strategy::lp) >=
        feasibility_rate(out.records, Strategy::mh4));
  CHECK(feasibility_rate(out.records, Strategy::lp) >=
        feasibility_rate(out.records, Strategy::pmp));
}

TEST_CASE("served_load_cdf") {
  {
    const std::vector<BatchRecord> one{record(0, Strategy::pmp, true, 10.0)};
    const Cdf c = served_load_cdf(one, {});
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0] == std::pair<double, double>{10.0, 1.0});
  }
  {
    std::vector<BatchRecord> same;
    for (std::size_t i = 0; i < 5; ++i) same.push_back(record(i, Strategy::pmp, true, 7.0));
    const Cdf c = served_load_cdf(same, {});
    CHECK(c.samples.size() == 5);
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0].second == 1.0);
  }
  {
    std::vector<BatchRecord> rs{record(0, Strategy::lp, true, 20.0),
                                record(0, Strategy::mh2, false, 9.0),
                                record(1, Strategy::lp, true, 20.0),
                                record(1, Strategy::mh2, true, 20.0)};
    RecordSelection sel;
    sel.strategy = Strategy::lp;
    sel.filter = ServedFilter::mutually_feasible;
    const Cdf c = served_load_cdf(rs, sel);
    CHECK(c.samples.size() == 1);  // scenario 0 dropped
    sel.filter = ServedFilter::all;
    CHECK(served_load_cdf(rs, sel).samples.size() == 2);
    sel.strategy = Strategy::mh2;
    const Cdf m = served_load_cdf(rs, sel);
    REQUIRE(m.points.size() == 2);
    CHECK(m.points[0] == std::pair<double, double>{9.0, 0.5});
    CHECK(m.points[1] == std::pair<double, double>{20.0, 1.0});
  }
  CHECK_THROWS_AS(served_load_cdf({}, {}), EmptySelection);
  RecordSelection none;
  none.strategy = Strategy::mh4;
  CHECK_THROWS_AS(served_load_cdf({record(0, Strategy::pmp, true, 1.0)}, none), EmptySelection);
}

TEST_CASE("LP-infeasible records never enter served aggregation") {
  auto r = record(0, Strategy::lp, false, 0.0);
  r.result.alpha.reset();
  RecordSelection sel;
  CHECK_THROWS_AS(served_load_cdf({r}, sel), EmptySelection);
}

TEST_CASE("feasibility_rate") {
  std::vector<BatchRecord> rs;
  for (std::size_t i = 0; i < 4; ++i) rs.push_back(record(i, Strategy::pmp, i != 2, 1.0));
  CHECK(feasibility_rate(rs, Strategy::pmp) == 75.0);
  for (auto& r : rs) r.result.feasible = true;
  CHECK(feasibility_rate(rs, Strategy::pmp) == 100.0);
  for (auto& r : rs) r.result.feasible = false;
  CHECK(feasibility_rate(rs, Strategy::pmp) == 0.0);
  CHECK_THROWS_AS(feasibility_rate(rs, Strategy::lp), EmptySelection);
}

TEST_CASE("batch spec validation") {
  BatchSpec spec = small_spec();
  spec.n_scenarios = 0;
  CHECK_THROWS_AS(run_batch(spec), std::invalid_argument);
  spec = small_spec();
  spec.strategies = {Strategy::pmp, Strategy::pmp};
  CHECK_THROWS_AS(run_batch(spec), std::invalid_argument);
  spec = small_spec();
  spec.n_aps_list = {0};
  CHECK_THROWS_AS(run_batch(spec), std::invalid_argument);
}

TEST_CASE("radio overrides apply per strategy") {
  BatchSpec spec = small_spec();
  spec.strategies = {Strategy::pmp};
  const auto base = run_batch(spec);
  RadioConfig weak = spec.radio;
  weak.tx_gain_dbi = -30.0;
  spec.radio_overrides[Strategy::pmp] = weak;
  const auto worse = run_batch(spec);
  double a = 0.0, b = 0.0;
  for (const auto& r : base.records) a += r.result.served_mbps;
  for (const auto& r : worse.records) b += r.result.served_mbps;
  CHECK(b < a);
}

TEST_CASE("MMP_THREADS is honoured") {
  setenv("MMP_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  setenv("MMP_THREADS", "zero", 1);
  CHECK(default_thread_count() >= 1);
  unsetenv("MMP_THREADS");
}
