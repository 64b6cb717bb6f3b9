#include "fdnet/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fdnet {

Allocation waterfill(const ParallelChannels& ch) {
  if (ch.eff_gain.empty())
    throw std::invalid_argument("waterfill: no channels");
  if (!std::isfinite(ch.p_total) || ch.p_total < 0.0)
    throw std::invalid_argument("waterfill: budget must be >= 0");
  for (double g : ch.eff_gain)
    if (!std::isfinite(g) || g < 0.0)
      throw std::invalid_argument("waterfill: gains must be >= 0");

  const std::size_t n = ch.eff_gain.size();
  Allocation out;
  out.power.assign(n, 0.0);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (ch.eff_gain[i] > 0.0) order.push_back(i);
  if (order.empty()) {
    out.degenerate = true;
    return out;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ch.eff_gain[a] > ch.eff_gain[b];
  });

  // Grow the active set while the implied level still covers the next
  // channel's inverse gain.
  double inv_sum = 0.0;
  double level = 1.0 / ch.eff_gain[order[0]];
  std::size_t active = 0;
  for (std::size_t m = 0; m < order.size(); ++m) {
    const double inv = 1.0 / ch.eff_gain[order[m]];
    const double candidate = (ch.p_total + inv_sum + inv) / double(m + 1);
    if (candidate > inv) {
      inv_sum += inv;
      level = candidate;
      active = m + 1;
    } else {
      break;
    }
  }
  if (active == 0) {
    // Zero budget: the level sits at the best channel's activation boundary.
    level = 1.0 / ch.eff_gain[order[0]];
  }
  out.water_level = level;
  for (std::size_t m = 0; m < active; ++m) {
    const std::size_t i = order[m];
    out.power[i] = std::max(0.0, level - 1.0 / ch.eff_gain[i]);
  }
  // Absorb rounding so the budget is met exactly.
  if (active > 0) {
    double used = std::accumulate(out.power.begin(), out.power.end(), 0.0);
    out.power[order[0]] += ch.p_total - used;
  }
  return out;
}

namespace {

std::vector<double> coupled_gains(const std::vector<double>& direct,
                                  const Matrix<double>& rsi_rx,
                                  const std::vector<double>& other_power,
                                  double noise) {
  std::vector<double> eff(direct.size());
  for (std::size_t s = 0; s < direct.size(); ++s) {
    double leak = 0.0;
    for (std::size_t t = 0; t < other_power.size(); ++t)
      leak += rsi_rx(t, s) * other_power[t];
    eff[s] = direct[s] / (noise + leak);
  }
  return eff;
}

double max_rel_change(const std::vector<double>& a,
                      const std::vector<double>& b, double scale) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace

FdWaterfillResult fd_mimo_waterfill(const MimoScenario& scn,
                                    const std::vector<double>& stream_gains_a,
                                    const std::vector<double>& stream_gains_b,
                                    double tol, int max_iters) {
  const std::size_t sa = stream_gains_a.size();
  const std::size_t sb = stream_gains_b.size();
  const auto limit =
      static_cast<std::size_t>(std::min(scn.n_a, scn.n_b));
  if (sa == 0 || sb == 0)
    throw std::invalid_argument("fd_mimo_waterfill: empty stream set");
  if (sa > limit || sb > limit)
    throw std::invalid_argument(
        "fd_mimo_waterfill: more streams than paired antennas");
  if (tol <= 0.0 || max_iters < 1)
    throw std::invalid_argument("fd_mimo_waterfill: bad tolerance or cap");
  if (scn.noise <= 0.0)
    throw std::invalid_argument("fd_mimo_waterfill: noise must be positive");

  FdWaterfillResult res;
  // Interference-free start; with zero coupling the first sweep confirms it.
  res.at_a = waterfill(
      {coupled_gains(stream_gains_a, scn.rsi_b, std::vector<double>(sb, 0.0),
                     scn.noise),
       scn.p_a});
  res.at_b = waterfill(
      {coupled_gains(stream_gains_b, scn.rsi_a, std::vector<double>(sa, 0.0),
                     scn.noise),
       scn.p_b});

  for (int it = 1; it <= max_iters; ++it) {
    Allocation next_a = waterfill(
        {coupled_gains(stream_gains_a, scn.rsi_b, res.at_b.power, scn.noise),
         scn.p_a});
    Allocation next_b = waterfill(
        {coupled_gains(stream_gains_b, scn.rsi_a, next_a.power, scn.noise),
         scn.p_b});
    const double change =
        std::max(max_rel_change(next_a.power, res.at_a.power, scn.p_a),
                 max_rel_change(next_b.power, res.at_b.power, scn.p_b));
    res.at_a = std::move(next_a);
    res.at_b = std::move(next_b);
    res.iterations = it;
    if (change < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace fdnet
