#include "mmp/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmp {

void validate(const RadioConfig& cfg) {
  const double finite[] = {cfg.center_freq_ghz, cfg.tx_power_dbm,   cfg.tx_gain_dbi,
                           cfg.rx_gain_dbi,     cfg.noise_figure_db, cfg.snr_min_db,
                           cfg.eff_max_bps_hz,  cfg.rb_bandwidth_hz, cfg.min_distance_m};
  for (double v : finite) {
    if (!std::isfinite(v)) throw std::invalid_argument("radio config has a non-finite value");
  }
  if (cfg.n_rbs < 1) throw std::invalid_argument("n_rbs must be at least 1");
  if (!(cfg.enb_height_m > 0.0 && cfg.rn_height_m > 0.0 && cfg.building_height_m > 0.0 &&
        cfg.street_width_m > 0.0))
    throw std::invalid_argument("heights and street width must be positive");
  if (!(cfg.eff_scale > 0.0 && cfg.eff_scale <= 1.0))
    throw std::invalid_argument("eff_scale must lie in (0, 1]");
  if (!(cfg.center_freq_ghz > 0.0 && cfg.rb_bandwidth_hz > 0.0 && cfg.eff_max_bps_hz > 0.0 &&
        cfg.min_distance_m > 0.0))
    throw std::invalid_argument("frequency, RB bandwidth, efficiency cap and minimum distance "
                                "must be positive");
}

double path_loss_db(double distance_m, const RadioConfig& cfg, LinkEnd end) {
  if (!std::isfinite(distance_m)) throw std::invalid_argument("distance must be finite");
  const double d = std::max(distance_m, cfg.min_distance_m);
  const double h_bs = end == LinkEnd::enb ? cfg.enb_height_m : cfg.rn_height_m;
  const double h_ut = cfg.rn_height_m;
  const double w = cfg.street_width_m;
  const double h = cfg.building_height_m;
  const double log_hbs = std::log10(h_bs);
  const double ut_term = std::log10(11.75 * h_ut);

  return 161.04 - 7.1 * std::log10(w) + 7.5 * std::log10(h) -
         (24.37 - 3.7 * (h / h_bs) * (h / h_bs)) * log_hbs +
         (43.42 - 3.1 * log_hbs) * (std::log10(d) - 3.0) + 20.0 * std::log10(cfg.center_freq_ghz) -
         (3.2 * ut_term * ut_term - 4.97);
}

double rb_noise_dbm(const RadioConfig& cfg) {
  return -174.0 + 10.0 * std::log10(cfg.rb_bandwidth_hz) + cfg.noise_figure_db;
}

double snr_db(double distance_m, const RadioConfig& cfg, LinkEnd end) {
  const double per_rb_tx_dbm = cfg.tx_power_dbm - 10.0 * std::log10(cfg.n_rbs);
  return per_rb_tx_dbm + cfg.tx_gain_dbi + cfg.rx_gain_dbi - path_loss_db(distance_m, cfg, end) -
         rb_noise_dbm(cfg);
}

double per_rb_rate_bps(double snr, const RadioConfig& cfg) {
  if (!(snr >= cfg.snr_min_db)) return 0.0;
  const double eff =
      std::min(cfg.eff_max_bps_hz, cfg.eff_scale * std::log2(1.0 + std::pow(10.0, snr / 10.0)));
  // Snap to a nano-bps grid so the capped rate is exact (4.4 * 180 kHz
  // otherwise lands one ulp above 792 kbps).
  return std::round(cfg.rb_bandwidth_hz * eff * 1e9) / 1e9;
}

std::optional<std::int64_t> rbs_required(double load_bps, double rate_bps) {
  if (!(load_bps >= 0.0)) throw std::invalid_argument("load must be non-negative");
  if (load_bps == 0.0) return 0;
  if (!(rate_bps > 0.0)) return std::nullopt;
  return static_cast<std::int64_t>(std::ceil(load_bps / rate_bps));
}

LinkMetrics link_metrics(const Node& a, const Node& b, const RadioConfig& cfg) {
  if (a.id == b.id) throw std::invalid_argument("link endpoints must differ");
  const LinkEnd end = (a.id == 0 || b.id == 0) ? LinkEnd::enb : LinkEnd::relay;
  LinkMetrics m;
  m.distance_m = std::max(distance_km(a, b) * 1000.0, cfg.min_distance_m);
  m.path_loss_db = path_loss_db(m.distance_m, cfg, end);
  m.snr_db = snr_db(m.distance_m, cfg, end);
  m.per_rb_rate_bps = per_rb_rate_bps(m.snr_db, cfg);
  m.capacity_bps = cfg.n_rbs * m.per_rb_rate_bps;
  return m;
}

}  // namespace mmp
