#include "mmp/topology.hpp"

namespace mmp {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::pmp: return "pmp";
    case Strategy::mh2: return "mh2";
    case Strategy::mh4: return "mh4";
    case Strategy::lp: return "lp";
  }
  return "?";
}

std::string_view to_string(TopologyKind k) {
  switch (k) {
    case TopologyKind::pmp: return "pmp";
    case TopologyKind::mh_tree: return "mh_tree";
    case TopologyKind::lp_subgraph: return "lp_subgraph";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::pmp, Strategy::mh2, Strategy::mh4, Strategy::lp}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::served: return "served";
    case Outcome::overloaded: return "overloaded";
    case Outcome::unreachable: return "unreachable";
    case Outcome::lp_infeasible: return "lp_infeasible";
  }
  return "?";
}

}  // namespace mmp
