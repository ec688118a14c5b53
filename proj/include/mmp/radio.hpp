#pragma once

#include <cstdint>
#include <optional>

#include "mmp/scenario.hpp"

namespace mmp {

/// Link-budget parameters. Defaults describe a 20 MHz TV UHF carrier at 510 MHz
/// split into 100 LTE resource blocks.
struct RadioConfig {
  double center_freq_ghz = 0.51;
  double tx_power_dbm = 27.0;
  double tx_gain_dbi = 10.0;
  double rx_gain_dbi = 10.0;
  double enb_height_m = 30.0;
  double rn_height_m = 10.0;
  int n_rbs = 100;
  double rb_bandwidth_hz = 180000.0;
  double noise_figure_db = 7.0;
  double street_width_m = 20.0;
  double building_height_m = 5.0;
  double snr_min_db = -10.0;
  double eff_max_bps_hz = 4.4;
  double eff_scale = 0.75;
  double min_distance_m = 10.0;

  bool operator==(const RadioConfig&) const = default;
};

/// Throws std::invalid_argument on a config that cannot describe a radio.
void validate(const RadioConfig& cfg);

/// Which antenna height plays the base-station role in the RMa formula.
enum class LinkEnd {
  enb,    // link touches node 0: h_BS = enb_height_m
  relay,  // RN-RN link: h_BS = rn_height_m
};

struct LinkMetrics {
  double distance_m = 0.0;  // after clamping to min_distance_m
  double path_loss_db = 0.0;
  double snr_db = 0.0;
  double per_rb_rate_bps = 0.0;
  double capacity_bps = 0.0;  // n_rbs * per_rb_rate_bps

  bool operator==(const LinkMetrics&) const = default;
};

/// 3GPP TR 36.814 RMa NLoS path loss, extrapolated beyond 5 km and clamped
/// below at min_distance_m. The mobile-side height is always rn_height_m.
double path_loss_db(double distance_m, const RadioConfig& cfg, LinkEnd end = LinkEnd::enb);

/// Per-RB noise power: thermal floor over one RB plus the noise figure.
double rb_noise_dbm(const RadioConfig& cfg);

/// SNR per RB with the transmit power spread evenly over all n_rbs.
double snr_db(double distance_m, const RadioConfig& cfg, LinkEnd end = LinkEnd::enb);

/// Truncated Shannon: zero below snr_min_db, eff_scale * log2(1 + snr) capped
/// at eff_max_bps_hz, times the RB bandwidth.
double per_rb_rate_bps(double snr_db, const RadioConfig& cfg);

/// RBs needed to carry load_bps at per_rb_rate_bps each. std::nullopt marks an
/// unsatisfiable link (positive load over a zero-rate link).
std::optional<std::int64_t> rbs_required(double load_bps, double per_rb_rate_bps);

/// Full metric chain between two distinct sites.
LinkMetrics link_metrics(const Node& a, const Node& b, const RadioConfig& cfg);

}  // namespace mmp
