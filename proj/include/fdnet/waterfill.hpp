#pragma once

#include <vector>

#include "fdnet/mimo.hpp"

namespace fdnet {

// Independent parallel channels sharing one power budget. eff_gain[i] is the
// effective channel gain over noise (1/W): allocating p watts to channel i
// yields SINR eff_gain[i] * p.
struct ParallelChannels {
  std::vector<double> eff_gain;
  double p_total = 0.0;
};

struct Allocation {
  std::vector<double> power;  // per-channel watts
  double water_level = 0.0;   // common level mu; p_i = max(0, mu - 1/g_i)
  bool degenerate = false;    // every gain is zero, nothing allocated
};

// Exact water-filling: sorts inverse gains and solves the active-set level
// in closed form. Zero-gain channels never receive power. If all gains are
// zero the result is flagged degenerate with zero power everywhere.
Allocation waterfill(const ParallelChannels& ch);

struct FdWaterfillResult {
  Allocation at_a;
  Allocation at_b;
  bool converged = false;
  int iterations = 0;
};

// Coupled bidirectional water-filling. Node A splits p_a over its transmit
// streams (stream s: A antenna s -> B antenna s, direct gain
// stream_gains_a[s]); the receiving node's own transmit allocation leaks
// into its receive antennas through the scenario's residual matrices, so
// each node's effective gains depend on the other node's split. Starts from
// the interference-free solution and alternates A then B per sweep until the
// largest per-node relative change drops below tol. With zero residual
// coupling this converges in one sweep to the plain water-filling result.
FdWaterfillResult fd_mimo_waterfill(const MimoScenario& scn,
                                    const std::vector<double>& stream_gains_a,
                                    const std::vector<double>& stream_gains_b,
                                    double tol = 1e-6, int max_iters = 100);

}  // namespace fdnet
