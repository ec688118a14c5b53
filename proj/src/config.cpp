#include "mmp/config.hpp"

#include <json.hpp>

namespace mmp {

using nlohmann::json;

std::string_view to_string(ServedFilter f) {
  return f == ServedFilter::all ? "all" : "mutually-feasible";
}

namespace {

template <typename T>
T get_as(const json& v, std::string_view key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError("wrong type for \"" + std::string(key) + "\"");
  }
}

void expect_object(const json& v, std::string_view what) {
  if (!v.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
}

RadioConfig apply_radio(const json& obj, RadioConfig cfg) {
  expect_object(obj, "radio section");
  for (const auto& [key, value] : obj.items()) {
    if (key == "n_rbs") {
      cfg.n_rbs = get_as<int>(value, key);
      continue;
    }
    double* field = nullptr;
    if (key == "center_freq_ghz") field = &cfg.center_freq_ghz;
    else if (key == "tx_power_dbm") field = &cfg.tx_power_dbm;
    else if (key == "tx_gain_dbi") field = &cfg.tx_gain_dbi;
    else if (key == "rx_gain_dbi") field = &cfg.rx_gain_dbi;
    else if (key == "enb_height_m") field = &cfg.enb_height_m;
    else if (key == "rn_height_m") field = &cfg.rn_height_m;
    else if (key == "rb_bandwidth_hz") field = &cfg.rb_bandwidth_hz;
    else if (key == "noise_figure_db") field = &cfg.noise_figure_db;
    else if (key == "street_width_m") field = &cfg.street_width_m;
    else if (key == "building_height_m") field = &cfg.building_height_m;
    else if (key == "snr_min_db") field = &cfg.snr_min_db;
    else if (key == "eff_max_bps_hz") field = &cfg.eff_max_bps_hz;
    else if (key == "eff_scale") field = &cfg.eff_scale;
    else if (key == "min_distance_m") field = &cfg.min_distance_m;
    if (!field) throw ParseError("unknown radio key \"" + key + "\"");
    *field = get_as<double>(value, key);
  }
  return cfg;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Strategy strategy_from(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw ValidationError("unknown topology \"" + name + "\"");
  return *s;
}

}  // namespace

RadioConfig parse_radio_config(std::string_view json_object, RadioConfig base) {
  return apply_radio(parse_json(json_object), base);
}

RunConfig parse_run_config(std::string_view json_text) {
  const json doc = parse_json(json_text);
  expect_object(doc, "config");
  RunConfig rc;
  BatchSpec& b = rc.batch;

  if (auto it = doc.find("radio"); it != doc.end()) b.radio = apply_radio(*it, b.radio);
  if (auto it = doc.find("radio_overrides"); it != doc.end()) {
    expect_object(*it, "radio_overrides");
    for (const auto& [name, obj] : it->items())
      b.radio_overrides[strategy_from(name)] = apply_radio(obj, b.radio);
  }
  if (auto it = doc.find("output_dir"); it != doc.end())
    rc.output_dir = get_as<std::string>(*it, "output_dir");
  if (auto it = doc.find("experiment"); it != doc.end()) {
    expect_object(*it, "experiment");
    for (const auto& [key, v] : it->items()) {
      if (key == "n_aps_list") {
        b.n_aps_list = get_as<std::vector<int>>(v, key);
      } else if (key == "area_list") {
        b.area_list = get_as<std::vector<double>>(v, key);
      } else if (key == "n_scenarios") {
        b.n_scenarios = get_as<int>(v, key);
      } else if (key == "topologies") {
        b.strategies.clear();
        for (const auto& name : get_as<std::vector<std::string>>(v, key))
          b.strategies.push_back(strategy_from(name));
      } else if (key == "master_seed") {
        b.master_seed = get_as<std::uint64_t>(v, key);
      } else if (key == "filter") {
        const auto f = get_as<std::string>(v, key);
        if (f == "all") b.filter = ServedFilter::all;
        else if (f == "mutually-feasible") b.filter = ServedFilter::mutually_feasible;
        else throw ValidationError("filter must be \"all\" or \"mutually-feasible\"");
      } else if (key == "demand_set_mbps") {
        b.demand_set_mbps = get_as<std::vector<double>>(v, key);
      } else if (key == "pop_at_center") {
        b.pop_placement = get_as<bool>(v, key) ? PopPlacement::center : PopPlacement::random;
      } else if (key == "lp_scale_on_infeasible") {
        b.lp_scale_on_infeasible = get_as<bool>(v, key);
      } else {
        throw ParseError("unknown experiment key \"" + key + "\"");
      }
    }
  }
  for (const auto& [key, v] : doc.items()) {
    if (key != "radio" && key != "radio_overrides" && key != "experiment" && key != "output_dir")
      throw ParseError("unknown config key \"" + key + "\"");
  }

  try {
    validate(b);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (b.demand_set_mbps.empty()) throw ValidationError("demand_set_mbps is empty");
  for (double d : b.demand_set_mbps) {
    if (!(d > 0.0)) throw ValidationError("demand_set_mbps entries must be positive");
  }
  return rc;
}

}  // namespace mmp
