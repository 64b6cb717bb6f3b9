#pragma once

#include <optional>
#include <vector>

#include "fdnet/channel.hpp"

namespace fdnet {

enum class RelayProtocol { DecodeForward, AmplifyForward };

// One transmit/receive antenna pairing at a relay, with the channels seen
// through that pairing. Antenna indices are 1-based.
struct RelayAntennaConfig {
  int tx_antenna = 0;
  int rx_antenna = 0;
  ChannelGain h_sr;       // source -> relay receive antenna
  ChannelGain h_rd;       // relay transmit antenna -> destination
  double rsi_gain = 0.0;  // transmit -> receive residual power gain
};

// Full-duplex relays between one source and one destination. Each relay
// offers one or more antenna configurations.
struct RelayScenario {
  std::vector<std::vector<RelayAntennaConfig>> relays;
  std::optional<ChannelGain> h_sd;  // direct link, unused by relaying itself
  double p_s = 0.0;      // source power (W)
  double p_r_max = 0.0;  // relay power budget (W)
  double noise = 0.0;    // noise power (W)

  int n_relays() const { return static_cast<int>(relays.size()); }
};

// End-to-end SINR through relay `relay` using antenna configuration `config`
// (0-based indices) at relay power p_r in [0, p_r_max]. First hop:
// |h_sr|^2 p_s / (rsi_gain p_r + noise); second hop: |h_rd|^2 p_r / noise.
// DecodeForward returns min(g1, g2); AmplifyForward returns
// g1 g2 / (g1 + g2 + 1).
double end_to_end_sinr(const RelayScenario& scn, int relay, int config,
                       double p_r, RelayProtocol protocol);

struct RelayChoice {
  int relay = 0;   // 0-based
  int config = 0;  // 0-based
  double sinr = 0.0;
};

// Exhaustive search over relays and antenna configurations maximizing the
// end-to-end SINR at fixed relay power. Ties keep the lexicographically
// first (relay, config).
RelayChoice select_relay_antenna(const RelayScenario& scn, double p_r,
                                 RelayProtocol protocol);

struct RelayPowerResult {
  double p_r = 0.0;
  double sinr = 0.0;
};

// Relay transmit power maximizing the end-to-end SINR over [0, p_r_max] by
// golden-section search, with both interval endpoints also evaluated so
// corner optima are returned exactly. tol is relative to p_r_max.
RelayPowerResult optimal_relay_power(const RelayScenario& scn, int relay,
                                     int config, RelayProtocol protocol,
                                     double tol = 1e-6);

struct ModeDecision {
  bool full_duplex = false;
  double fd_rate = 0.0;
  double hd_rate = 0.0;
};

// Duplex mode selection for one bidirectional pair. Full duplex serves both
// directions simultaneously at self-interference-limited SINRs; half duplex
// serves each direction in half the resource at clean SINRs:
//   fd_rate = rate(fd_a) + rate(fd_b)
//   hd_rate = rate(hd_a) / 2 + rate(hd_b) / 2.
// Full duplex wins ties.
ModeDecision mode_switch(double sinr_fd_a, double sinr_fd_b, double sinr_hd_a,
                         double sinr_hd_b);

}  // namespace fdnet
