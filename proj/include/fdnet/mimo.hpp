#pragma once

#include <utility>
#include <vector>

#include "fdnet/channel.hpp"
#include "fdnet/grid.hpp"

namespace fdnet {

// Bidirectional full-duplex link between node A and node B. Each node uses
// one transmit and one distinct receive antenna drawn from its own array.
struct MimoScenario {
  int n_a = 0;  // antennas at node A (>= 2)
  int n_b = 0;  // antennas at node B (>= 2)

  Matrix<ChannelGain> h_ab;  // n_a x n_b, A antenna -> B antenna
  Matrix<ChannelGain> h_ba;  // n_b x n_a, B antenna -> A antenna

  // Residual self-interference power gains, transmit antenna (row) into
  // receive antenna (column) at the same node.
  Matrix<double> rsi_a;  // n_a x n_a
  Matrix<double> rsi_b;  // n_b x n_b

  double p_a = 0.0;    // node A transmit power (W)
  double p_b = 0.0;    // node B transmit power (W)
  double noise = 0.0;  // receiver noise power (W)
};

// Antenna selection; indices are 1-based.
struct LinkSelection {
  int a_tx = 0;
  int a_rx = 0;
  int b_tx = 0;
  int b_rx = 0;

  bool operator==(const LinkSelection&) const = default;
};

struct SelectionResult {
  LinkSelection selection;
  double sinr_at_a = 0.0;  // B -> A direction
  double sinr_at_b = 0.0;  // A -> B direction
  double objective = 0.0;  // sum rate or sum SER of the winning selection
};

// All feasible selections (a_tx != a_rx, b_tx != b_rx) in lexicographic
// order of (a_tx, a_rx, b_tx, b_rx). Size n_a(n_a-1) * n_b(n_b-1).
std::vector<LinkSelection> enumerate_selections(int n_a, int n_b);

// SINR of both directions for one selection. The A->B direction is degraded
// by node B's own transmission leaking into its receive antenna, and
// symmetrically for B->A.
std::pair<double, double> bidirectional_sinrs(const MimoScenario& scn,
                                              const LinkSelection& sel);

// Exhaustive search maximizing rate(A->B) + rate(B->A). Ties keep the
// lexicographically first selection.
SelectionResult select_max_sum_rate(const MimoScenario& scn);

// Exhaustive search minimizing ser(A->B) + ser(B->A) for the modulation.
// Ties keep the lexicographically first selection.
SelectionResult select_min_sum_ser(const MimoScenario& scn, Modulation mod);

}  // namespace fdnet
