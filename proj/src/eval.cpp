#include "mmp/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mmp/lpopt.hpp"
#include "mmp/multihop.hpp"
#include "mmp/pmp.hpp"
#include "mmp/rng.hpp"

namespace mmp {

const RadioConfig& BatchSpec::radio_for(Strategy s) const {
  auto it = radio_overrides.find(s);
  return it == radio_overrides.end() ? radio : it->second;
}

void validate(const BatchSpec& spec) {
  if (spec.n_scenarios < 1) throw std::invalid_argument("n_scenarios must be at least 1");
  if (spec.n_aps_list.empty()) throw std::invalid_argument("n_aps_list is empty");
  if (spec.area_list.empty()) throw std::invalid_argument("area_list is empty");
  if (spec.strategies.empty()) throw std::invalid_argument("no topologies requested");
  for (int n : spec.n_aps_list) {
    if (n < 1) throw std::invalid_argument("n_aps entries must be at least 1");
  }
  for (double a : spec.area_list) {
    if (!(a > 0.0)) throw std::invalid_argument("area entries must be positive");
  }
  for (std::size_t i = 0; i < spec.strategies.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.strategies[i] == spec.strategies[j])
        throw std::invalid_argument("topology listed twice");
    }
  }
  validate(spec.radio);
  for (const auto& [s, cfg] : spec.radio_overrides) validate(cfg);
}

EvalResult evaluate(const Scenario& s, Strategy strategy, const RadioConfig& cfg,
                    bool lp_scale_on_infeasible) {
  switch (strategy) {
    case Strategy::pmp: return evaluate_pmp(s, cfg);
    case Strategy::mh2: return evaluate_multihop(s, cfg, 2);
    case Strategy::mh4: return evaluate_multihop(s, cfg, 4);
    case Strategy::lp: return evaluate_lp(s, cfg, lp_scale_on_infeasible);
  }
  throw std::invalid_argument("unknown strategy");
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("MMP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<bool> mutually_feasible_mask(const std::vector<BatchRecord>& records) {
  std::size_t max_index = 0;
  for (const BatchRecord& r : records) max_index = std::max(max_index, r.scenario_index);
  std::vector<bool> mask(records.empty() ? 0 : max_index + 1, true);
  for (const BatchRecord& r : records) {
    if (!r.result.feasible) mask[r.scenario_index] = false;
  }
  return mask;
}

BatchOutput run_batch(const BatchSpec& spec) {
  validate(spec);
  struct Group {
    int n_aps;
    double area_km;
  };
  std::vector<Group> groups;
  for (int n : spec.n_aps_list) {
    for (double a : spec.area_list) groups.push_back({n, a});
  }

  const std::size_t per_group = static_cast<std::size_t>(spec.n_scenarios);
  const std::size_t n_scen = groups.size() * per_group;
  const std::size_t n_strat = spec.strategies.size();

  BatchOutput out;
  out.records.resize(n_scen * n_strat);
  const unsigned threads = spec.threads ? spec.threads : default_thread_count();

  parallel_for(n_scen, threads, [&](std::size_t k) {
    const Group& g = groups[k / per_group];
    const std::uint64_t seed = derive_seed(spec.master_seed, k);
    const Scenario s =
        generate_scenario(g.n_aps, g.area_km, spec.demand_set_mbps, seed, spec.pop_placement);
    const std::uint64_t hash = scenario_hash(s);
    for (std::size_t si = 0; si < n_strat; ++si) {
      const Strategy strat = spec.strategies[si];
      BatchRecord& rec = out.records[k * n_strat + si];
      rec.master_seed = spec.master_seed;
      rec.scenario_index = k;
      rec.scenario_seed = seed;
      rec.scenario_hash = hash;
      rec.n_aps = g.n_aps;
      rec.area_km = g.area_km;
      rec.result = evaluate(s, strat, spec.radio_for(strat), spec.lp_scale_on_infeasible);
    }
  });

  const std::vector<bool> mutual = mutually_feasible_mask(out.records);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t si = 0; si < n_strat; ++si) {
      GroupSummary gs;
      gs.n_aps = groups[gi].n_aps;
      gs.area_km = groups[gi].area_km;
      gs.strategy = spec.strategies[si];
      gs.scenarios = per_group;
      std::size_t feasible = 0;
      double served = 0.0;
      double demand = 0.0;
      for (std::size_t k = gi * per_group; k < (gi + 1) * per_group; ++k) {
        const EvalResult& r = out.records[k * n_strat + si].result;
        if (r.feasible) ++feasible;
        if (!r.counts_toward_served()) continue;
        if (spec.filter == ServedFilter::mutually_feasible && !mutual[k]) continue;
        served += r.served_mbps;
        demand += r.total_demand_mbps;
        gs.cdf_samples.push_back(r.served_mbps);
      }
      gs.feasible_pct = 100.0 * static_cast<double>(feasible) / static_cast<double>(per_group);
      gs.served_count = gs.cdf_samples.size();
      if (gs.served_count > 0) {
        gs.mean_served_mbps = served / static_cast<double>(gs.served_count);
        gs.mean_demand_mbps = demand / static_cast<double>(gs.served_count);
      }
      std::sort(gs.cdf_samples.begin(), gs.cdf_samples.end());
      out.summary.groups.push_back(std::move(gs));
    }
  }
  return out;
}

Cdf served_load_cdf(const std::vector<BatchRecord>& records, const RecordSelection& sel) {
  const std::vector<bool> mutual = sel.filter == ServedFilter::mutually_feasible
                                       ? mutually_feasible_mask(records)
                                       : std::vector<bool>{};
  Cdf cdf;
  for (const BatchRecord& r : records) {
    if (sel.strategy && r.result.strategy != *sel.strategy) continue;
    if (sel.n_aps && r.n_aps != *sel.n_aps) continue;
    if (sel.area_km && r.area_km != *sel.area_km) continue;
    if (!r.result.counts_toward_served()) continue;
    if (!mutual.empty() && !mutual[r.scenario_index]) continue;
    cdf.samples.push_back(r.result.served_mbps);
  }
  if (cdf.samples.empty()) throw EmptySelection("no records match the CDF selection");
  std::sort(cdf.samples.begin(), cdf.samples.end());
  const double n = static_cast<double>(cdf.samples.size());
  for (std::size_t i = 0; i < cdf.samples.size(); ++i) {
    if (i + 1 < cdf.samples.size() && cdf.samples[i + 1] == cdf.samples[i]) continue;
    cdf.points.emplace_back(cdf.samples[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

double feasibility_rate(const std::vector<BatchRecord>& records, Strategy strategy) {
  std::size_t total = 0;
  std::size_t feasible = 0;
  for (const BatchRecord& r : records) {
    if (r.result.strategy != strategy) continue;
    ++total;
    if (r.result.feasible) ++feasible;
  }
  if (total == 0)
    throw EmptySelection("no records for topology " + std::string(to_string(strategy)));
  return 100.0 * static_cast<double>(feasible) / static_cast<double>(total);
}

}  // namespace mmp
