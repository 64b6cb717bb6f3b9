#include "fdnet/relay.hpp"

#include <cmath>
#include <stdexcept>

namespace fdnet {

namespace {

const RelayAntennaConfig& config_at(const RelayScenario& scn, int relay,
                                    int config) {
  if (relay < 0 || relay >= scn.n_relays())
    throw std::invalid_argument("relay index out of range");
  const auto& cfgs = scn.relays[static_cast<std::size_t>(relay)];
  if (config < 0 || config >= static_cast<int>(cfgs.size()))
    throw std::invalid_argument("relay antenna config out of range");
  return cfgs[static_cast<std::size_t>(config)];
}

void check_scenario(const RelayScenario& scn) {
  if (scn.relays.empty())
    throw std::invalid_argument("relay: need at least one relay");
  for (const auto& cfgs : scn.relays)
    if (cfgs.empty())
      throw std::invalid_argument("relay: every relay needs a configuration");
  if (scn.p_s < 0.0 || scn.p_r_max < 0.0 || scn.noise <= 0.0)
    throw std::invalid_argument("relay: powers must be >= 0 and noise > 0");
}

}  // namespace

double end_to_end_sinr(const RelayScenario& scn, int relay, int config,
                       double p_r, RelayProtocol protocol) {
  check_scenario(scn);
  if (!std::isfinite(p_r) || p_r < 0.0 || p_r > scn.p_r_max)
    throw std::invalid_argument("relay: p_r outside [0, p_r_max]");
  const auto& c = config_at(scn, relay, config);
  const double g1 =
      c.h_sr.power() * scn.p_s / (c.rsi_gain * p_r + scn.noise);
  const double g2 = c.h_rd.power() * p_r / scn.noise;
  if (protocol == RelayProtocol::DecodeForward) return std::min(g1, g2);
  return g1 * g2 / (g1 + g2 + 1.0);
}

RelayChoice select_relay_antenna(const RelayScenario& scn, double p_r,
                                 RelayProtocol protocol) {
  check_scenario(scn);
  RelayChoice best;
  bool first = true;
  for (int r = 0; r < scn.n_relays(); ++r) {
    const int n_cfg = static_cast<int>(scn.relays[static_cast<std::size_t>(r)].size());
    for (int c = 0; c < n_cfg; ++c) {
      const double g = end_to_end_sinr(scn, r, c, p_r, protocol);
      if (first || g > best.sinr) {
        best = {r, c, g};
        first = false;
      }
    }
  }
  return best;
}

RelayPowerResult optimal_relay_power(const RelayScenario& scn, int relay,
                                     int config, RelayProtocol protocol,
                                     double tol) {
  check_scenario(scn);
  config_at(scn, relay, config);
  if (tol <= 0.0) throw std::invalid_argument("relay: tol must be positive");
  if (scn.p_r_max == 0.0)
    return {0.0, end_to_end_sinr(scn, relay, config, 0.0, protocol)};

  const auto f = [&](double p) {
    return end_to_end_sinr(scn, relay, config, p, protocol);
  };

  // Golden-section over the unimodal objective: the first hop degrades and
  // the second improves with relay power.
  const double gr = (std::sqrt(5.0) + 1.0) / 2.0;
  double lo = 0.0, hi = scn.p_r_max;
  double c = hi - (hi - lo) / gr;
  double d = lo + (hi - lo) / gr;
  double fc = f(c), fd = f(d);
  const double eps = tol * scn.p_r_max;
  while (hi - lo > eps) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) / gr;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) / gr;
      fd = f(d);
    }
  }
  RelayPowerResult best{(lo + hi) / 2.0, f((lo + hi) / 2.0)};
  // Corner solutions are returned exactly.
  for (double p : {0.0, scn.p_r_max}) {
    const double v = f(p);
    if (v > best.sinr) best = {p, v};
  }
  return best;
}

ModeDecision mode_switch(double sinr_fd_a, double sinr_fd_b, double sinr_hd_a,
                         double sinr_hd_b) {
  ModeDecision d;
  d.fd_rate = rate(sinr_fd_a) + rate(sinr_fd_b);
  d.hd_rate = 0.5 * rate(sinr_hd_a) + 0.5 * rate(sinr_hd_b);
  d.full_duplex = d.fd_rate >= d.hd_rate;
  return d;
}

}  // namespace fdnet
