#include "fdnet/mimo.hpp"

#include <stdexcept>

namespace fdnet {

namespace {

void check_scenario(const MimoScenario& scn) {
  if (scn.n_a < 2 || scn.n_b < 2)
    throw std::invalid_argument("mimo: each node needs at least 2 antennas");
  const auto na = static_cast<std::size_t>(scn.n_a);
  const auto nb = static_cast<std::size_t>(scn.n_b);
  if (scn.h_ab.rows() != na || scn.h_ab.cols() != nb ||
      scn.h_ba.rows() != nb || scn.h_ba.cols() != na ||
      scn.rsi_a.rows() != na || scn.rsi_a.cols() != na ||
      scn.rsi_b.rows() != nb || scn.rsi_b.cols() != nb)
    throw std::invalid_argument("mimo: channel matrix shape mismatch");
  if (scn.p_a < 0.0 || scn.p_b < 0.0 || scn.noise <= 0.0)
    throw std::invalid_argument("mimo: powers must be >= 0 and noise > 0");
}

void check_selection(const MimoScenario& scn, const LinkSelection& sel) {
  if (sel.a_tx < 1 || sel.a_tx > scn.n_a || sel.a_rx < 1 ||
      sel.a_rx > scn.n_a || sel.b_tx < 1 || sel.b_tx > scn.n_b ||
      sel.b_rx < 1 || sel.b_rx > scn.n_b)
    throw std::invalid_argument("mimo: antenna index out of range");
  if (sel.a_tx == sel.a_rx || sel.b_tx == sel.b_rx)
    throw std::invalid_argument(
        "mimo: transmit and receive antennas must differ");
}

}  // namespace

std::vector<LinkSelection> enumerate_selections(int n_a, int n_b) {
  if (n_a < 2 || n_b < 2)
    throw std::invalid_argument("mimo: each node needs at least 2 antennas");
  std::vector<LinkSelection> out;
  out.reserve(static_cast<std::size_t>(n_a) * (n_a - 1) * n_b * (n_b - 1));
  for (int a_tx = 1; a_tx <= n_a; ++a_tx)
    for (int a_rx = 1; a_rx <= n_a; ++a_rx) {
      if (a_rx == a_tx) continue;
      for (int b_tx = 1; b_tx <= n_b; ++b_tx)
        for (int b_rx = 1; b_rx <= n_b; ++b_rx) {
          if (b_rx == b_tx) continue;
          out.push_back({a_tx, a_rx, b_tx, b_rx});
        }
    }
  return out;
}

std::pair<double, double> bidirectional_sinrs(const MimoScenario& scn,
                                              const LinkSelection& sel) {
  check_scenario(scn);
  check_selection(scn, sel);
  const auto a_tx = static_cast<std::size_t>(sel.a_tx - 1);
  const auto a_rx = static_cast<std::size_t>(sel.a_rx - 1);
  const auto b_tx = static_cast<std::size_t>(sel.b_tx - 1);
  const auto b_rx = static_cast<std::size_t>(sel.b_rx - 1);

  const double at_b =
      sinr({scn.h_ab(a_tx, b_rx).power(), scn.p_a,
            scn.rsi_b(b_tx, b_rx), scn.p_b, scn.noise});
  const double at_a =
      sinr({scn.h_ba(b_tx, a_rx).power(), scn.p_b,
            scn.rsi_a(a_tx, a_rx), scn.p_a, scn.noise});
  return {at_a, at_b};
}

SelectionResult select_max_sum_rate(const MimoScenario& scn) {
  check_scenario(scn);
  SelectionResult best;
  bool first = true;
  for (const auto& sel : enumerate_selections(scn.n_a, scn.n_b)) {
    const auto [at_a, at_b] = bidirectional_sinrs(scn, sel);
    const double objective = rate(at_b) + rate(at_a);
    if (first || objective > best.objective) {
      best = {sel, at_a, at_b, objective};
      first = false;
    }
  }
  return best;
}

SelectionResult select_min_sum_ser(const MimoScenario& scn, Modulation mod) {
  check_scenario(scn);
  SelectionResult best;
  bool first = true;
  for (const auto& sel : enumerate_selections(scn.n_a, scn.n_b)) {
    const auto [at_a, at_b] = bidirectional_sinrs(scn, sel);
    const double objective = ser(at_b, mod) + ser(at_a, mod);
    if (first || objective < best.objective) {
      best = {sel, at_a, at_b, objective};
      first = false;
    }
  }
  return best;
}

}  // namespace fdnet
