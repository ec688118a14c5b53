#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmp/config.hpp"
#include "mmp/eval.hpp"
#include "mmp/lpopt.hpp"
#include "mmp/multihop.hpp"
#include "mmp/pmp.hpp"
#include "mmp/radio.hpp"
#include "mmp/report.hpp"
#include "mmp/scenario.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace mmp;

namespace {

Strategy strategy_arg(const std::string& name) {
  const auto s = parse_strategy(name);
  if (!s) throw py::value_error("unknown topology \"" + name + "\"");
  return *s;
}

py::list matrix_rows(const NodeMatrix& m) {
  py::list rows;
  for (int i = 0; i < m.size(); ++i) {
    py::list row;
    for (int j = 0; j < m.size(); ++j) row.append(m(i, j));
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Middle-mile backhaul planner: scenarios, radio model, topologies and batch runs";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<EmptySelection>(m, "EmptySelection", PyExc_ValueError);

  py::class_<RadioConfig>(m, "RadioConfig")
      .def(py::init<>())
      .def_readwrite("center_freq_ghz", &RadioConfig::center_freq_ghz)
      .def_readwrite("tx_power_dbm", &RadioConfig::tx_power_dbm)
      .def_readwrite("tx_gain_dbi", &RadioConfig::tx_gain_dbi)
      .def_readwrite("rx_gain_dbi", &RadioConfig::rx_gain_dbi)
      .def_readwrite("enb_height_m", &RadioConfig::enb_height_m)
      .def_readwrite("rn_height_m", &RadioConfig::rn_height_m)
      .def_readwrite("n_rbs", &RadioConfig::n_rbs)
      .def_readwrite("rb_bandwidth_hz", &RadioConfig::rb_bandwidth_hz)
      .def_readwrite("noise_figure_db", &RadioConfig::noise_figure_db)
      .def_readwrite("street_width_m", &RadioConfig::street_width_m)
      .def_readwrite("building_height_m", &RadioConfig::building_height_m)
      .def_readwrite("snr_min_db", &RadioConfig::snr_min_db)
      .def_readwrite("eff_max_bps_hz", &RadioConfig::eff_max_bps_hz)
      .def_readwrite("eff_scale", &RadioConfig::eff_scale)
      .def_readwrite("min_distance_m", &RadioConfig::min_distance_m);

  py::class_<Node>(m, "Node")
      .def(py::init<>())
      .def(py::init([](int id, double x, double y, double demand) {
             return Node{id, x, y, demand};
           }),
           py::arg("id"), py::arg("x_km"), py::arg("y_km"), py::arg("demand_mbps"))
      .def_readwrite("id", &Node::id)
      .def_readwrite("x_km", &Node::x_km)
      .def_readwrite("y_km", &Node::y_km)
      .def_readwrite("demand_mbps", &Node::demand_mbps)
      .def("__repr__", [](const Node& n) {
        return "Node(" + std::to_string(n.id) + ", " + format_number(n.x_km) + ", " +
               format_number(n.y_km) + ", " + format_number(n.demand_mbps) + ")";
      });

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("area_km", &Scenario::area_km)
      .def_readwrite("nodes", &Scenario::nodes)
      .def_readwrite("seed", &Scenario::seed)
      .def_readwrite("demand_set_mbps", &Scenario::demand_set_mbps)
      .def_property_readonly("n_aps", &Scenario::n_aps)
      .def_property_readonly("total_demand_mbps", &Scenario::total_demand_mbps)
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

  m.def(
      "generate_scenario",
      [](int n_aps, double area_km, std::uint64_t seed, std::vector<double> demand_set,
         bool pop_center) {
        if (demand_set.empty()) demand_set = default_demand_set();
        return generate_scenario(n_aps, area_km, demand_set, seed,
                                 pop_center ? PopPlacement::center : PopPlacement::random);
      },
      py::arg("n_aps"), py::arg("area_km") = 10.0, py::arg("seed") = 1,
      py::arg("demand_set_mbps") = std::vector<double>{}, py::arg("pop_center") = false);
  m.def("save_scenario", &save_scenario);
  m.def("load_scenario", [](const std::string& text) { return load_scenario(text); });
  m.def("scenario_hash", &scenario_hash);

  m.def("path_loss_db", [](double d, const RadioConfig& cfg, bool relay) {
        return path_loss_db(d, cfg, relay ? LinkEnd::relay : LinkEnd::enb);
      },
      py::arg("distance_m"), py::arg("cfg") = RadioConfig{}, py::arg("relay") = false);
  m.def("snr_db", [](double d, const RadioConfig& cfg, bool relay) {
        return snr_db(d, cfg, relay ? LinkEnd::relay : LinkEnd::enb);
      },
      py::arg("distance_m"), py::arg("cfg") = RadioConfig{}, py::arg("relay") = false);
  m.def("per_rb_rate_bps", &per_rb_rate_bps, py::arg("snr_db"), py::arg("cfg") = RadioConfig{});
  m.def("rbs_required", &rbs_required, py::arg("load_bps"), py::arg("per_rb_rate_bps"));

  m.def(
      "evaluate",
      [](const Scenario& s, const std::string& topology, const RadioConfig& cfg, bool lp_scale) {
        const EvalResult r = evaluate(s, strategy_arg(topology), cfg, lp_scale);
        py::dict d;
        d["topology"] = std::string(to_string(r.strategy));
        d["outcome"] = std::string(to_string(r.outcome));
        d["feasible"] = r.feasible;
        d["total_demand_mbps"] = r.total_demand_mbps;
        d["served_mbps"] = r.served_mbps;
        d["served_per_ap_mbps"] = r.served_per_ap_mbps;
        d["alpha"] = r.alpha;
        return d;
      },
      py::arg("scenario"), py::arg("topology"), py::arg("cfg") = RadioConfig{},
      py::arg("lp_scale_on_infeasible") = false);

  m.def(
      "multihop_tree",
      [](const Scenario& s, int max_hops, int max_degree, const RadioConfig& cfg) -> py::object {
        const auto t = build_constrained_mwst(s, cfg, max_hops, max_degree);
        if (!t) return py::none();
        py::list edges;
        for (const TreeEdge& e : t->edges) edges.append(py::make_tuple(e.parent, e.child));
        return edges;
      },
      py::arg("scenario"), py::arg("max_hops"), py::arg("max_degree") = kDefaultMaxDegree,
      py::arg("cfg") = RadioConfig{}, "Tree edges as (parent, child) pairs, or None.");

  m.def(
      "lp_utilities",
      [](const Scenario& s, const RadioConfig& cfg) -> py::object {
        const auto u = solve_topology(s, cfg);
        if (!u) return py::none();
        return matrix_rows(*u);
      },
      py::arg("scenario"), py::arg("cfg") = RadioConfig{},
      "Link utility matrix beta[i][j], or None when the LP is infeasible.");

  m.def(
      "run_batch",
      [](const std::string& config_json, std::optional<unsigned> threads) {
        RunConfig rc = parse_run_config(config_json);
        if (threads) rc.batch.threads = *threads;
        BatchOutput out;
        {
          py::gil_scoped_release release;
          out = run_batch(rc.batch);
        }
        py::dict d;
        d["results_csv"] = results_csv(out.records);
        d["summary_csv"] = summary_csv(out.summary);
        py::dict cdf;
        for (Strategy s : rc.batch.strategies)
          cdf[py::str(std::string(to_string(s)))] = cdf_csv(out.summary, s);
        d["cdf_csv"] = cdf;
        return d;
      },
      py::arg("config_json") = "{}", py::arg("threads") = py::none(),
      "Run a batch from a JSON config; returns the CSV texts.");

  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
}
