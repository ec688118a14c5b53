#include "mmp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "mmp/rng.hpp"

namespace mmp {

using nlohmann::json;

double Scenario::total_demand_mbps() const {
  return std::accumulate(nodes.begin(), nodes.end(), 0.0,
                         [](double acc, const Node& n) { return acc + n.demand_mbps; });
}

double distance_km(const Node& a, const Node& b) {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

namespace {

void check_demand_set(std::span<const double> set) {
  if (set.empty()) throw std::invalid_argument("demand set is empty");
  for (double d : set) {
    if (!std::isfinite(d) || d <= 0.0)
      throw std::invalid_argument("demand set entries must be positive and finite");
  }
}

}  // namespace

Scenario generate_scenario(int n_aps, double area_km, std::span<const double> demand_set_mbps,
                           std::uint64_t seed, PopPlacement placement) {
  if (n_aps < 1) throw std::invalid_argument("n_aps must be at least 1");
  if (!std::isfinite(area_km) || area_km <= 0.0)
    throw std::invalid_argument("area_km must be positive");
  check_demand_set(demand_set_mbps);

  Rng rng(seed);
  Scenario s;
  s.area_km = area_km;
  s.seed = seed;
  s.demand_set_mbps.assign(demand_set_mbps.begin(), demand_set_mbps.end());
  s.nodes.resize(static_cast<std::size_t>(n_aps) + 1);

  for (int id = 0; id <= n_aps; ++id) {
    Node& n = s.nodes[id];
    n.id = id;
    n.x_km = rng.uniform01() * area_km;
    n.y_km = rng.uniform01() * area_km;
  }
  if (placement == PopPlacement::center) {
    s.nodes[0].x_km = area_km / 2.0;
    s.nodes[0].y_km = area_km / 2.0;
  }
  for (int id = 1; id <= n_aps; ++id)
    s.nodes[id].demand_mbps = demand_set_mbps[rng.index(demand_set_mbps.size())];
  return s;
}

void validate(const Scenario& s) {
  if (!std::isfinite(s.area_km) || s.area_km <= 0.0)
    throw ValidationError("area_km must be positive");
  if (s.demand_set_mbps.empty()) throw ValidationError("demand_set_mbps is empty");
  for (double d : s.demand_set_mbps) {
    if (!std::isfinite(d) || d <= 0.0)
      throw ValidationError("demand_set_mbps entries must be positive");
  }
  if (s.nodes.size() < 2) throw ValidationError("scenario needs the PoP and at least one AP");
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const Node& n = s.nodes[i];
    const std::string where = "node " + std::to_string(i);
    if (n.id != static_cast<int>(i))
      throw ValidationError(where + ": ids must be 0..N in order, got " + std::to_string(n.id));
    if (!(n.x_km >= 0.0 && n.x_km <= s.area_km && n.y_km >= 0.0 && n.y_km <= s.area_km))
      throw ValidationError(where + ": position outside the area");
    if (i == 0) {
      if (n.demand_mbps != 0.0) throw ValidationError("PoP (node 0) must have zero demand");
    } else if (std::find(s.demand_set_mbps.begin(), s.demand_set_mbps.end(), n.demand_mbps) ==
               s.demand_set_mbps.end()) {
      throw ValidationError(where + ": demand not in demand_set_mbps");
    }
  }
}

namespace {

json to_json(const Scenario& s) {
  json nodes = json::array();
  for (const Node& n : s.nodes) {
    nodes.push_back({{"id", n.id}, {"x_km", n.x_km}, {"y_km", n.y_km},
                     {"demand_mbps", n.demand_mbps}});
  }
  return {{"area_km", s.area_km},
          {"seed", s.seed},
          {"demand_set_mbps", s.demand_set_mbps},
          {"nodes", std::move(nodes)}};
}

template <typename T>
T field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("wrong type for \"") + key + "\"");
  }
}

}  // namespace

std::string save_scenario(const Scenario& s) {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  return to_json(s).dump(2) + "\n";
}

Scenario load_scenario(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");

  Scenario s;
  s.area_km = field<double>(doc, "area_km");
  s.seed = field<std::uint64_t>(doc, "seed");
  s.demand_set_mbps = field<std::vector<double>>(doc, "demand_set_mbps");
  const auto& nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_array()) throw ParseError("\"nodes\" must be an array");
  for (const json& jn : *nodes) {
    if (!jn.is_object()) throw ParseError("node entries must be objects");
    s.nodes.push_back({field<int>(jn, "id"), field<double>(jn, "x_km"), field<double>(jn, "y_km"),
                       field<double>(jn, "demand_mbps")});
  }
  validate(s);
  return s;
}

std::uint64_t scenario_hash(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : save_scenario(s)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mmp
