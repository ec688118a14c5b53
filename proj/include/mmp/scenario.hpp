#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmp {

/// Malformed scenario/config text.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed document whose contents break a domain invariant.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A site in the deployment. Id 0 is the PoP/eNB; ids 1..N are AP/relay sites.
struct Node {
  int id = 0;
  double x_km = 0.0;
  double y_km = 0.0;
  double demand_mbps = 0.0;

  bool operator==(const Node&) const = default;
};

struct Scenario {
  double area_km = 0.0;
  std::vector<Node> nodes;  // PoP first, then APs in id order
  std::uint64_t seed = 0;
  std::vector<double> demand_set_mbps;

  int n_aps() const { return static_cast<int>(nodes.size()) - 1; }
  const Node& pop() const { return nodes.front(); }
  double total_demand_mbps() const;

  bool operator==(const Scenario&) const = default;
};

enum class PopPlacement { random, center };

/// The demand set used throughout the experiments, in Mbps.
inline const std::vector<double>& default_demand_set() {
  static const std::vector<double> set{2.0, 4.0, 6.0, 8.0, 10.0};
  return set;
}

// Draw order from a single mt19937_64 stream seeded with `seed`:
//   1. PoP x, PoP y (always drawn, discarded under PopPlacement::center)
//   2. AP x, AP y for ids 1..N
//   3. AP demand index for ids 1..N
// Doubles take the top 53 bits of a draw; indices use rejection sampling, so
// the stream is identical on every platform.
Scenario generate_scenario(int n_aps, double area_km, std::span<const double> demand_set_mbps,
                           std::uint64_t seed, PopPlacement placement = PopPlacement::random);

/// Throws ValidationError describing the first broken invariant.
void validate(const Scenario& s);

/// Canonical JSON: sorted keys, two-space indent, LF, trailing newline.
std::string save_scenario(const Scenario& s);
Scenario load_scenario(std::string_view bytes);

/// FNV-1a over the canonical encoding; identifies a scenario across topologies.
std::uint64_t scenario_hash(const Scenario& s);

double distance_km(const Node& a, const Node& b);

}  // namespace mmp
