#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fdnet/rng.hpp"
#include "fdnet/waterfill.hpp"

using namespace fdnet;

namespace {

// Independent oracle: bisect the water level until the power budget is met.
std::vector<double> waterfill_bisection(const std::vector<double>& gains,
                                        double p_total) {
  double hi = p_total;
  for (const double g : gains)
    if (g > 0.0) hi = std::max(hi, 1.0 / g);
  hi += p_total + 1.0;
  double lo = 0.0;
  const auto spent = [&](double mu) {
    double s = 0.0;
    for (const double g : gains)
      if (g > 0.0) s += std::max(0.0, mu - 1.0 / g);
    return s;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (spent(mid) > p_total ? hi : lo) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  std::vector<double> p(gains.size(), 0.0);
  for (std::size_t i = 0; i < gains.size(); ++i)
    if (gains[i] > 0.0) p[i] = std::max(0.0, mu - 1.0 / gains[i]);
  return p;
}

void check_kkt(const std::vector<double>& gains, double p_total,
               const Allocation& a) {
  double spent = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    REQUIRE(a.power[i] >= 0.0);
    spent += a.power[i];
    if (gains[i] <= 0.0) {
      CHECK(a.power[i] == 0.0);
      continue;
    }
    if (a.power[i] > 0.0) {
      // active channel: p + 1/g equals the water level
      CHECK(std::fabs(a.power[i] + 1.0 / gains[i] - a.water_level) <=
            1e-12 * std::max(1.0, a.water_level));
    } else {
      // inactive channel: the level does not reach its floor
      CHECK(1.0 / gains[i] >= a.water_level - 1e-12 * std::max(1.0, a.water_level));
    }
  }
  CHECK(std::fabs(spent - p_total) <= 1e-12 * std::max(1.0, p_total));
}

}  // namespace

TEST_CASE("hand-solved allocations") {
  {
    const ParallelChannels ch{{2.0, 1.0, 0.25}, 1.0};
    const Allocation a = waterfill(ch);
    REQUIRE(a.power.size() == 3);
    CHECK(a.power[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(a.power[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(a.power[2] == 0.0);
    CHECK(a.water_level == doctest::Approx(1.25).epsilon(1e-12));
    CHECK_FALSE(a.degenerate);
  }
  {
    const ParallelChannels ch{{1.0, 0.5}, 1.0};
    const Allocation a = waterfill(ch);
    CHECK(a.power[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.power[1] == 0.0);
    CHECK(a.water_level == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("budget is exhausted exactly") {
  const ParallelChannels ch{{1.3, 0.7, 0.9, 2.4}, 3.7};
  const Allocation a = waterfill(ch);
  double spent = 0.0;
  for (const double p : a.power) spent += p;
  CHECK(spent == doctest::Approx(3.7).epsilon(1e-15));
}

TEST_CASE("zero budget activates nothing and reports the entry level") {
  const ParallelChannels ch{{0.5, 2.0}, 0.0};
  const Allocation a = waterfill(ch);
  CHECK(a.power[0] == 0.0);
  CHECK(a.power[1] == 0.0);
  CHECK(a.water_level == doctest::Approx(0.5).epsilon(1e-12));  // 1/g_best
  CHECK_FALSE(a.degenerate);
}

TEST_CASE("all-zero gains are degenerate") {
  const ParallelChannels ch{{0.0, 0.0}, 2.0};
  const Allocation a = waterfill(ch);
  CHECK(a.degenerate);
  CHECK(a.power[0] == 0.0);
  CHECK(a.power[1] == 0.0);
}

TEST_CASE("zero-gain channels never receive power") {
  const ParallelChannels ch{{0.0, 1.0, 0.0, 3.0}, 2.0};
  const Allocation a = waterfill(ch);
  CHECK(a.power[0] == 0.0);
  CHECK(a.power[2] == 0.0);
  check_kkt(ch.eff_gain, ch.p_total, a);
}

TEST_CASE("random instances satisfy KKT and agree with bisection") {
  RngStream rng(21, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(8));
    ParallelChannels ch;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      ch.eff_gain.push_back(u < 0.15 ? 0.0 : -std::log(1.0 - rng.uniform()));
    }
    const double budgets[] = {0.0, 0.3, 1.0, 10.0};
    ch.p_total = budgets[trial % 4];

    const Allocation a = waterfill(ch);
    const bool any_gain =
        std::any_of(ch.eff_gain.begin(), ch.eff_gain.end(),
                    [](double g) { return g > 0.0; });
    if (!any_gain) {
      CHECK(a.degenerate);
      continue;
    }
    check_kkt(ch.eff_gain, ch.p_total, a);
    const auto oracle = waterfill_bisection(ch.eff_gain, ch.p_total);
    for (std::size_t i = 0; i < oracle.size(); ++i)
      CHECK(std::fabs(a.power[i] - oracle[i]) <= 1e-9);
  }
}

TEST_CASE("waterfilling beats uniform on its own objective") {
  RngStream rng(22, 0);
  for (int trial = 0; trial < 100; ++trial) {
    ParallelChannels ch;
    for (int i = 0; i < 5; ++i)
      ch.eff_gain.push_back(-std::log(1.0 - rng.uniform()));
    ch.p_total = 2.0;
    const Allocation a = waterfill(ch);
    double wf = 0.0, uni = 0.0;
    for (std::size_t i = 0; i < ch.eff_gain.size(); ++i) {
      wf += std::log2(1.0 + ch.eff_gain[i] * a.power[i]);
      uni += std::log2(1.0 + ch.eff_gain[i] * ch.p_total / 5.0);
    }
    CHECK(wf >= uni - 1e-12);
  }
}

TEST_CASE("coupled bidirectional waterfilling") {
  MimoScenario scn;
  scn.n_a = 2;
  scn.n_b = 2;
  scn.h_ab = Matrix<ChannelGain>(2, 2);
  scn.h_ba = Matrix<ChannelGain>(2, 2);
  scn.rsi_a = Matrix<double>(2, 2);
  scn.rsi_b = Matrix<double>(2, 2);
  scn.p_a = 2.0;
  scn.p_b = 1.0;
  scn.noise = 1.0;
  const std::vector<double> ga = {1.5, 0.7};
  const std::vector<double> gb = {0.9, 2.0};

  SUBCASE("zero residual coupling reduces to independent waterfilling") {
    const FdWaterfillResult res = fd_mimo_waterfill(scn, ga, gb);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    const Allocation plain_a = waterfill({{ga[0] / scn.noise, ga[1] / scn.noise}, scn.p_a});
    const Allocation plain_b = waterfill({{gb[0] / scn.noise, gb[1] / scn.noise}, scn.p_b});
    for (int s = 0; s < 2; ++s) {
      CHECK(res.at_a.power[s] == doctest::Approx(plain_a.power[s]).epsilon(1e-12));
      CHECK(res.at_b.power[s] == doctest::Approx(plain_b.power[s]).epsilon(1e-12));
    }
  }

  SUBCASE("residual coupling converges to a mutual fixed point") {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        scn.rsi_a(i, j) = 0.05 + 0.03 * static_cast<double>(i + j);
        scn.rsi_b(i, j) = 0.04 + 0.02 * static_cast<double>(i ^ j);
      }
    const FdWaterfillResult res = fd_mimo_waterfill(scn, ga, gb, 1e-10, 500);
    CHECK(res.converged);

    // Recompute each node's effective gains from the other's final powers
    // and water-fill once more: the allocation must reproduce itself.
    const auto eff = [&](const std::vector<double>& direct,
                         const Matrix<double>& rsi_rx,
                         const std::vector<double>& other) {
      std::vector<double> g(direct.size());
      for (std::size_t s = 0; s < direct.size(); ++s) {
        double leak = 0.0;
        for (std::size_t t = 0; t < other.size(); ++t)
          leak += rsi_rx(t, s) * other[t];
        g[s] = direct[s] / (scn.noise + leak);
      }
      return g;
    };
    const Allocation again_a = waterfill({eff(ga, scn.rsi_b, res.at_b.power), scn.p_a});
    const Allocation again_b = waterfill({eff(gb, scn.rsi_a, res.at_a.power), scn.p_b});
    for (int s = 0; s < 2; ++s) {
      CHECK(std::fabs(again_a.power[s] - res.at_a.power[s]) < 1e-8);
      CHECK(std::fabs(again_b.power[s] - res.at_b.power[s]) < 1e-8);
    }
  }
}

TEST_CASE("stream count larger than the array is rejected") {
  MimoScenario scn;
  scn.n_a = 2;
  scn.n_b = 2;
  scn.h_ab = Matrix<ChannelGain>(2, 2);
  scn.h_ba = Matrix<ChannelGain>(2, 2);
  scn.rsi_a = Matrix<double>(2, 2);
  scn.rsi_b = Matrix<double>(2, 2);
  scn.p_a = scn.p_b = 1.0;
  scn.noise = 1.0;
  CHECK_THROWS(fd_mimo_waterfill(scn, {1.0, 1.0, 1.0}, {1.0, 1.0}));
}
