#include "mmp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmp/config.hpp"
#include "mmp/eval.hpp"
#include "mmp/lpopt.hpp"
#include "mmp/multihop.hpp"
#include "mmp/pmp.hpp"
#include "mmp/report.hpp"
#include "mmp/scenario.hpp"

namespace mmp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Error carrying the exit code to return.
struct Failure : std::runtime_error {
  Failure(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  int code;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Failure(kUsageError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes every file under a temporary name first and renames only once all
/// writes succeeded, so a failed run leaves no partial outputs.
void write_files_atomically(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& [path, content] : files) {
    fs::path tmp = path;
    tmp += ".tmp";
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw Failure(kUsageError, "cannot write " + path.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) fs::rename(temps[i], files[i].first);
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) return RunConfig{};
  return parse_run_config(read_file(path));
}

json link_json(const LinkMetrics& m) {
  return {{"distance_m", m.distance_m},
          {"path_loss_db", m.path_loss_db},
          {"snr_db", m.snr_db},
          {"per_rb_rate_bps", m.per_rb_rate_bps},
          {"capacity_bps", m.capacity_bps}};
}

json result_json(const EvalResult& r) {
  json j{{"topology", to_string(r.strategy)},
         {"outcome", to_string(r.outcome)},
         {"feasible", r.feasible},
         {"total_demand_mbps", r.total_demand_mbps},
         {"served_mbps", r.served_mbps},
         {"served_per_ap_mbps", r.served_per_ap_mbps}};
  j["alpha"] = r.alpha ? json(*r.alpha) : json(nullptr);
  return j;
}

void print_result(std::ostream& os, const EvalResult& r) {
  os << "outcome: " << to_string(r.outcome) << (r.feasible ? " (all demand served)" : "") << '\n'
     << "served: " << format_number(r.served_mbps) << " of "
     << format_number(r.total_demand_mbps) << " Mbps";
  if (r.alpha && !r.feasible) os << " (alpha " << format_number(*r.alpha) << ')';
  os << '\n';
  for (std::size_t i = 0; i < r.served_per_ap_mbps.size(); ++i)
    os << "  AP " << i + 1 << ": " << format_number(r.served_per_ap_mbps[i]) << " Mbps\n";
}

int cmd_gen(int n_aps, double area, std::uint64_t seed, std::vector<double> demand_set,
            bool pop_center, const std::string& out) {
  const Scenario s = generate_scenario(n_aps, area, demand_set, seed,
                                       pop_center ? PopPlacement::center : PopPlacement::random);
  const std::string bytes = save_scenario(s);
  if (out.empty() || out == "-") {
    std::cout << bytes;
  } else {
    write_files_atomically({{out, bytes}});
  }
  return kOk;
}

int cmd_plan(const std::string& scenario_path, const std::string& topology,
             const std::string& config_path, std::string out, bool dump_lp, bool lp_scale) {
  const auto strategy = parse_strategy(topology);
  if (!strategy) throw Failure(kUsageError, "unknown topology \"" + topology + "\"");
  const Scenario s = load_scenario(read_file(scenario_path));
  const RunConfig rc = load_config(config_path);
  const RadioConfig& cfg = rc.batch.radio_for(*strategy);

  json report{{"scenario", scenario_path}, {"n_aps", s.n_aps()}, {"area_km", s.area_km},
              {"seed", s.seed}};
  json edges = json::array();
  EvalResult result;
  int code = kOk;
  std::ostream& os = std::cout;
  os << "scenario " << scenario_path << ": " << s.n_aps() << " APs, "
     << format_number(s.area_km) << " km side, topology " << topology << '\n';

  auto emit_edges = [&](const Topology& t, const Tree* tree, const EdgeAllocation* alloc) {
    os << "edges:\n";
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      const TopologyEdge& e = t.edges[i];
      json je{{"from", e.from}, {"to", e.to}, {"link", link_json(e.link)}, {"rbs", e.rbs},
              {"rbs_ceil", e.rbs_ceil}};
      os << "  " << e.from << " -> " << e.to << "  d=" << format_number(e.link.distance_m / 1000)
         << " km  snr=" << format_number(e.link.snr_db)
         << " dB  rate/RB=" << format_number(e.link.per_rb_rate_bps) << " bps  RBs="
         << format_number(e.rbs);
      if (tree) {
        je["depth"] = tree->depth[e.to];
        os << "  depth=" << tree->depth[e.to];
      }
      if (alloc) {
        je["rb_set"] = alloc->rb_sets[i];
        if (!alloc->rb_sets[i].empty())
          os << "  rb=[" << alloc->rb_sets[i].front() << ".." << alloc->rb_sets[i].back() << ']';
      }
      os << '\n';
      edges.push_back(std::move(je));
    }
  };

  switch (*strategy) {
    case Strategy::pmp: {
      Topology t = build_pmp(s, cfg);
      allocate_pmp(t, s, cfg);
      result = evaluate_pmp(s, cfg);
      emit_edges(t, nullptr, nullptr);
      break;
    }
    case Strategy::mh2:
    case Strategy::mh4: {
      const MultihopPlan plan = plan_multihop(s, cfg, *strategy == Strategy::mh2 ? 2 : 4);
      result = plan.result;
      if (plan.tree) {
        const EdgeAllocation* alloc = plan.allocation ? &*plan.allocation : nullptr;
        emit_edges(to_topology(*plan.tree, alloc), &*plan.tree, alloc);
      } else {
        os << "no spanning tree satisfies the hop and degree limits\n";
        code = kUnreachable;
      }
      break;
    }
    case Strategy::lp: {
      if (dump_lp) os << "LP model:\n" << lp::to_text(build_lp_model(s, cfg));
      const LpPlan plan = plan_lp(s, cfg, lp_scale);
      result = plan.result;
      if (plan.utility) {
        emit_edges(plan.topology, nullptr, nullptr);
        report["objective"] = total_utility(*plan.utility);
        json beta = json::array();
        for (int i = 0; i < plan.utility->size(); ++i) {
          json row = json::array();
          for (int j = 0; j < plan.utility->size(); ++j) row.push_back((*plan.utility)(i, j));
          beta.push_back(std::move(row));
        }
        report["beta"] = std::move(beta);
        if (dump_lp) os << utility_to_text(*plan.utility);
      }
      if (!result.feasible) os << "LP infeasible: no link utilities meet every demand\n";
      break;
    }
  }

  print_result(os, result);
  report["result"] = result_json(result);
  report["edges"] = std::move(edges);
  if (out.empty()) out = scenario_path + "." + topology + ".report.json";
  write_files_atomically({{out, report.dump(2) + "\n"}});
  os << "report written to " << out << '\n';
  return code;
}

int cmd_batch(const std::string& config_path, const std::string& out,
              const std::optional<std::uint64_t>& seed, const std::string& filter,
              const std::vector<std::string>& topologies) {
  RunConfig rc = load_config(config_path);
  if (seed) rc.batch.master_seed = *seed;
  if (!out.empty()) rc.output_dir = out;
  if (filter == "all") {
    rc.batch.filter = ServedFilter::all;
  } else if (filter == "mutually-feasible") {
    rc.batch.filter = ServedFilter::mutually_feasible;
  } else if (!filter.empty()) {
    throw Failure(kUsageError, "--filter must be all or mutually-feasible");
  }
  if (!topologies.empty()) {
    rc.batch.strategies.clear();
    for (const auto& name : topologies) {
      auto s = parse_strategy(name);
      if (!s) throw Failure(kUsageError, "unknown topology \"" + name + "\"");
      rc.batch.strategies.push_back(*s);
    }
  }

  const BatchOutput result = run_batch(rc.batch);
  fs::create_directories(rc.output_dir);
  std::vector<std::pair<fs::path, std::string>> files{
      {rc.output_dir / "results.csv", results_csv(result.records)},
      {rc.output_dir / "summary.csv", summary_csv(result.summary)}};
  for (Strategy s : rc.batch.strategies)
    files.emplace_back(rc.output_dir / ("cdf_" + std::string(to_string(s)) + ".csv"),
                       cdf_csv(result.summary, s));
  write_files_atomically(files);

  std::cout << "n_aps  area_km  topology  feasible%  mean_served_mbps\n";
  for (const GroupSummary& g : result.summary.groups) {
    std::cout << g.n_aps << "  " << format_number(g.area_km) << "  " << to_string(g.strategy)
              << "  " << format_number(g.feasible_pct) << "  "
              << format_number(g.mean_served_mbps) << '\n';
  }
  std::cout << "wrote " << files.size() << " files to " << rc.output_dir.string() << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Middle-mile backhaul planner: PMP, hop-limited multi-hop and LP topologies"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a random deployment scenario");
  int n_aps = 10;
  double area = 10.0;
  std::uint64_t gen_seed = 1;
  std::vector<double> demand_set = default_demand_set();
  bool pop_center = false;
  std::string gen_out;
  gen->add_option("--n-aps", n_aps, "Number of Wi-Fi APs")->required();
  gen->add_option("--area", area, "Side of the square area in km")->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen->add_option("--demand-set", demand_set, "Allowed AP demands in Mbps")->delimiter(',');
  gen->add_flag("--pop-center", pop_center, "Place the PoP at the area center");
  gen->add_option("--out", gen_out, "Output scenario file (stdout if omitted)");

  auto* plan = app.add_subcommand("plan", "Build and evaluate one topology for a scenario");
  std::string scenario_path;
  std::string topology;
  std::string plan_config;
  std::string plan_out;
  bool dump_lp = false;
  bool lp_scale = false;
  plan->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  plan->add_option("--topology", topology, "pmp | mh2 | mh4 | lp")->required();
  plan->add_option("--config", plan_config, "Run config JSON (radio section is used)");
  plan->add_option("--out", plan_out, "JSON report path (default <scenario>.<topology>.report.json)");
  plan->add_flag("--dump-lp", dump_lp, "Print the LP model and utility matrix");
  plan->add_flag("--lp-scale", lp_scale, "Scale demand down when the LP is infeasible");

  auto* batch = app.add_subcommand("batch", "Run a Monte Carlo experiment and write CSVs");
  std::string batch_config;
  std::string batch_out;
  std::optional<std::uint64_t> batch_seed;
  std::string filter;
  std::vector<std::string> topologies;
  batch->add_option("--config", batch_config, "Run config JSON");
  batch->add_option("--out", batch_out, "Output directory (overrides output_dir)");
  batch->add_option("--seed", batch_seed, "Master seed (overrides experiment.master_seed)");
  batch->add_option("--filter", filter, "all | mutually-feasible");
  batch->add_option("--topology", topologies, "Restrict to these topologies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  try {
    if (*gen) return cmd_gen(n_aps, area, gen_seed, demand_set, pop_center, gen_out);
    if (*plan) return cmd_plan(scenario_path, topology, plan_config, plan_out, dump_lp, lp_scale);
    if (*batch) return cmd_batch(batch_config, batch_out, batch_seed, filter, topologies);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"mmp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mmp::cli
