#pragma once

#include <cstdint>
#include <vector>

#include "fdnet/grid.hpp"
#include "fdnet/rng.hpp"

namespace fdnet {

// Single-cell full-duplex OFDMA instance: M uplink transmitters, M downlink
// receivers, K >= M subcarriers. The base station transmits and receives
// simultaneously, so uplink reception is degraded by its residual
// self-interference and each downlink receiver is degraded by the uplink
// user paired onto the same subcarrier.
struct OfdmaScenario {
  int m = 0;  // uplink TX users and downlink RX users
  int k = 0;  // subcarriers

  Matrix<double> g_up;    // m x k power gains, TX user -> base station
  Matrix<double> g_down;  // m x k power gains, base station -> RX user
  Cube<double> g_cross;   // m x m x k power gains, TX user i -> RX user j
  std::vector<double> rsi_bs;  // residual self-interference power per
                               // subcarrier at the base station (W)

  double p_user = 0.0;      // uplink transmit power per user (W)
  double p_bs_total = 0.0;  // downlink power budget (W)
  double noise = 0.0;       // noise power (W)
};

// One matched triple: subcarrier, uplink TX user, downlink RX user
// (0-based).
struct PairingTriple {
  int subcarrier = 0;
  int tx = 0;
  int rx = 0;

  bool operator==(const PairingTriple&) const = default;
};

// A feasible (partial) assignment: every TX, RX and subcarrier appears at
// most once.
struct PairingAssignment {
  std::vector<PairingTriple> triples;
};

// Dual prices maintained by the distributed matching. The price of the
// (subcarrier k, RX j) unit is subcarrier_price[k] + rx_price[j].
struct PriceState {
  std::vector<double> rx_price;
  std::vector<double> subcarrier_price;
};

enum class SplitRule { Uniform, WaterFilling };

struct MatchingResult {
  PairingAssignment assignment;
  PriceState prices;
  int iterations = 0;  // proposal rounds
};

struct CentralizedResult {
  PairingAssignment assignment;
  double sum_rate = 0.0;
  std::uint64_t candidates_evaluated = 0;
};

// Per-watt downlink split for a given assignment; p_down[t] pairs with
// assignment.triples[t].
struct PowerSplit {
  std::vector<double> p_down;
};

// Sum of both directions' spectral efficiencies for TX i, RX j on
// subcarrier k when the base station spends p_down watts on that unit.
double unit_rate(const OfdmaScenario& scn, int tx, int rx, int subcarrier,
                 double p_down);

// Downlink budget split over the matched units. Uniform divides
// p_bs_total equally; WaterFilling water-fills against each unit's
// effective downlink gain. The assignment must be nonempty.
PowerSplit split_bs_power(const OfdmaScenario& scn,
                          const PairingAssignment& asg, SplitRule rule);

// Total two-way rate of an assignment under a power split covering exactly
// its triples.
double sum_rate(const OfdmaScenario& scn, const PairingAssignment& asg,
                const PowerSplit& split);

// Distributed price-raising matching. Unmatched TX users repeatedly propose
// to their best-value (rate minus price) unit; proposals displace current
// holders, and every contested proposal raises the contested resource's
// price by the proposer's value margin (at least epsilon). Preference rates
// are always evaluated under the uniform split; the split rule matters to
// callers when they convert the matching into rates afterwards. A
// deterministic local-exchange polish runs on the equilibrium matching.
// epsilon <= 0 selects the default step, 1e-3 times the largest unit rate.
// If the iteration cap m*k*(max rate/epsilon) + m is exceeded (possible
// only in degenerate price standoffs), the remaining users are matched
// greedily by value.
MatchingResult price_matching(const OfdmaScenario& scn, SplitRule rule,
                              double epsilon);

// Exhaustive optimal assignment over all m! * k!/(k-m)! complete candidate
// assignments, maximizing sum rate under the given split rule. Guarded to
// m <= 6 and k <= 8. Ties keep the candidate whose sorted triple list is
// lexicographically smallest.
CentralizedResult centralized_exhaustive(const OfdmaScenario& scn,
                                         SplitRule rule);

// Uniformly random feasible complete assignment (random RX permutation and
// random ordered subcarrier selection).
PairingAssignment random_matching(const OfdmaScenario& scn, RngStream& rng);

// Validates feasibility (indices in range, no duplicate TX/RX/subcarrier).
bool is_feasible(const PairingAssignment& asg, int m, int k);

}  // namespace fdnet
