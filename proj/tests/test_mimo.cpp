#include <cmath>
#include <vector>

#include "doctest.h"
#include "fdnet/channel.hpp"
#include "fdnet/mimo.hpp"
#include "fdnet/rng.hpp"

using namespace fdnet;

namespace {

MimoScenario random_scenario(RngStream& rng, int n_a, int n_b) {
  MimoScenario scn;
  scn.n_a = n_a;
  scn.n_b = n_b;
  const auto na = static_cast<std::size_t>(n_a);
  const auto nb = static_cast<std::size_t>(n_b);
  scn.h_ab = Matrix<ChannelGain>(na, nb);
  scn.h_ba = Matrix<ChannelGain>(nb, na);
  scn.rsi_a = Matrix<double>(na, na);
  scn.rsi_b = Matrix<double>(nb, nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      scn.h_ab(i, j) = {rng.normal(), rng.normal()};
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < na; ++j)
      scn.h_ba(i, j) = {rng.normal(), rng.normal()};
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) scn.rsi_a(i, j) = 0.05 * rng.uniform();
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) scn.rsi_b(i, j) = 0.05 * rng.uniform();
  scn.p_a = 0.5 + rng.uniform();
  scn.p_b = 0.5 + rng.uniform();
  scn.noise = 0.2 + rng.uniform();
  return scn;
}

// Independent recomputation of both directions' SINRs from the raw tables.
std::pair<double, double> oracle_sinrs(const MimoScenario& scn,
                                       const LinkSelection& s) {
  const auto at = [&](int one_based) {
    return static_cast<std::size_t>(one_based - 1);
  };
  const double to_b = scn.h_ab(at(s.a_tx), at(s.b_rx)).power() * scn.p_a /
                      (scn.rsi_b(at(s.b_tx), at(s.b_rx)) * scn.p_b + scn.noise);
  const double to_a = scn.h_ba(at(s.b_tx), at(s.a_rx)).power() * scn.p_b /
                      (scn.rsi_a(at(s.a_tx), at(s.a_rx)) * scn.p_a + scn.noise);
  return {to_a, to_b};
}

}  // namespace

TEST_CASE("selection enumeration is lexicographic and complete") {
  const auto sels = enumerate_selections(2, 2);
  REQUIRE(sels.size() == 4);
  CHECK(sels[0] == LinkSelection{1, 2, 1, 2});
  CHECK(sels[1] == LinkSelection{1, 2, 2, 1});
  CHECK(sels[2] == LinkSelection{2, 1, 1, 2});
  CHECK(sels[3] == LinkSelection{2, 1, 2, 1});

  CHECK(enumerate_selections(3, 3).size() == 36);
  CHECK(enumerate_selections(4, 2).size() == 24);
  for (const auto& s : enumerate_selections(4, 3)) {
    CHECK(s.a_tx != s.a_rx);
    CHECK(s.b_tx != s.b_rx);
  }
}

TEST_CASE("bidirectional sinrs match a hand-built instance") {
  MimoScenario scn;
  scn.n_a = 2;
  scn.n_b = 2;
  scn.h_ab = Matrix<ChannelGain>(2, 2);
  scn.h_ba = Matrix<ChannelGain>(2, 2);
  scn.rsi_a = Matrix<double>(2, 2);
  scn.rsi_b = Matrix<double>(2, 2);
  scn.h_ab(0, 1) = {2.0, 0.0};  // |h|^2 = 4, A antenna 1 -> B antenna 2
  scn.h_ba(0, 1) = {1.0, 1.0};  // |h|^2 = 2, B antenna 1 -> A antenna 2
  scn.rsi_a(0, 1) = 0.5;        // A: tx 1 leaks into rx 2
  scn.rsi_b(0, 1) = 1.0;        // B: tx 1 leaks into rx 2
  scn.p_a = 1.0;
  scn.p_b = 2.0;
  scn.noise = 1.0;
  const LinkSelection sel{1, 2, 1, 2};
  const auto [at_a, at_b] = bidirectional_sinrs(scn, sel);
  CHECK(at_b == doctest::Approx(4.0 * 1.0 / (1.0 * 2.0 + 1.0)).epsilon(1e-15));
  CHECK(at_a == doctest::Approx(2.0 * 2.0 / (0.5 * 1.0 + 1.0)).epsilon(1e-15));
}

TEST_CASE("exhaustive selections match an independent brute force") {
  RngStream rng(11, 0);
  const int shapes[][2] = {{2, 2}, {2, 3}, {3, 3}, {4, 3}};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& shape = shapes[trial % 4];
    const MimoScenario scn = random_scenario(rng, shape[0], shape[1]);

    LinkSelection best_rate_sel{}, best_ser_sel{};
    double best_rate = -1.0, best_ser = 1e300;
    for (const auto& s : enumerate_selections(scn.n_a, scn.n_b)) {
      const auto [to_a, to_b] = oracle_sinrs(scn, s);
      const double r = rate(to_a) + rate(to_b);
      const double e = ser(to_a, Modulation::Qpsk) + ser(to_b, Modulation::Qpsk);
      if (r > best_rate) {
        best_rate = r;
        best_rate_sel = s;
      }
      if (e < best_ser) {
        best_ser = e;
        best_ser_sel = s;
      }
    }

    const SelectionResult by_rate = select_max_sum_rate(scn);
    CHECK(by_rate.selection == best_rate_sel);
    CHECK(by_rate.objective == best_rate);

    const SelectionResult by_ser = select_min_sum_ser(scn, Modulation::Qpsk);
    CHECK(by_ser.selection == best_ser_sel);
    CHECK(by_ser.objective == best_ser);
  }
}

TEST_CASE("ties keep the lexicographically first selection") {
  MimoScenario scn;
  scn.n_a = 3;
  scn.n_b = 2;
  scn.h_ab = Matrix<ChannelGain>(3, 2);
  scn.h_ba = Matrix<ChannelGain>(2, 3);
  scn.rsi_a = Matrix<double>(3, 3);
  scn.rsi_b = Matrix<double>(2, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      scn.h_ab(i, j) = {1.0, 0.0};
      scn.h_ba(j, i) = {1.0, 0.0};
    }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) scn.rsi_a(i, j) = 0.01;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) scn.rsi_b(i, j) = 0.01;
  scn.p_a = scn.p_b = 1.0;
  scn.noise = 1.0;
  CHECK(select_max_sum_rate(scn).selection == LinkSelection{1, 2, 1, 2});
  CHECK(select_min_sum_ser(scn, Modulation::Bpsk).selection ==
        LinkSelection{1, 2, 1, 2});
}

TEST_CASE("selection results report consistent sinrs and objective") {
  RngStream rng(12, 0);
  const MimoScenario scn = random_scenario(rng, 3, 3);
  const SelectionResult res = select_max_sum_rate(scn);
  const auto [at_a, at_b] = bidirectional_sinrs(scn, res.selection);
  CHECK(res.sinr_at_a == at_a);
  CHECK(res.sinr_at_b == at_b);
  CHECK(res.objective == doctest::Approx(rate(at_a) + rate(at_b)).epsilon(1e-15));
}

TEST_CASE("degenerate scenarios are rejected") {
  RngStream rng(13, 0);
  MimoScenario scn = random_scenario(rng, 2, 2);
  CHECK_THROWS(bidirectional_sinrs(scn, LinkSelection{1, 1, 1, 2}));
  CHECK_THROWS(bidirectional_sinrs(scn, LinkSelection{1, 2, 0, 2}));
  CHECK_THROWS(bidirectional_sinrs(scn, LinkSelection{1, 2, 1, 3}));
  scn.n_a = 1;
  CHECK_THROWS(select_max_sum_rate(scn));
  CHECK_THROWS(enumerate_selections(1, 2));
}
