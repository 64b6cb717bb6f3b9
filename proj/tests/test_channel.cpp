#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fdnet/channel.hpp"
#include "fdnet/rng.hpp"

using namespace fdnet;

namespace {

double normal_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

// Independent tail-probability oracle: Simpson integration of the standard
// normal density over [x, x + 12].
double q_numeric(double x) {
  const int n = 20000;
  const double b = x + 12.0;
  const double h = (b - x) / n;
  double s = normal_pdf(x) + normal_pdf(b);
  for (int i = 1; i < n; ++i) s += normal_pdf(x + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double q_of(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("BPSK symbol error rate matches the integrated Gaussian tail") {
  for (const double g : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double expected = q_numeric(std::sqrt(2.0 * g));
    CHECK(ser(g, Modulation::Bpsk) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("BPSK symbol error rate at 0 dB") {
  CHECK(std::fabs(ser(1.0, Modulation::Bpsk) - 0.0786496) < 1e-4);
}

TEST_CASE("square constellations follow the two-sided Gray expression") {
  for (const double g : {0.5, 2.0, 8.0}) {
    for (const auto& [mod, m] :
         {std::pair{Modulation::Qpsk, 4.0}, std::pair{Modulation::Qam16, 16.0},
          std::pair{Modulation::Qam64, 64.0}}) {
      const double p =
          2.0 * (1.0 - 1.0 / std::sqrt(m)) * q_of(std::sqrt(3.0 * g / (m - 1.0)));
      const double expected = 1.0 - (1.0 - p) * (1.0 - p);
      CHECK(ser(g, mod) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("error rate grows with constellation size at fixed sinr") {
  const double g = 4.0;
  CHECK(ser(g, Modulation::Bpsk) < ser(g, Modulation::Qpsk));
  CHECK(ser(g, Modulation::Qpsk) < ser(g, Modulation::Qam16));
  CHECK(ser(g, Modulation::Qam16) < ser(g, Modulation::Qam64));
}

TEST_CASE("cancellation depth converts to linear residual gain") {
  CHECK(rsi_gain_from_cancellation_db(0.0) == doctest::Approx(1.0));
  CHECK(rsi_gain_from_cancellation_db(80.0) == doctest::Approx(1e-8).epsilon(1e-12));
  CHECK(rsi_gain_from_cancellation_db(10.0) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("sinr combines the far link against residual plus noise") {
  SinrInputs in;
  in.direct_power_gain = 2.0;
  in.p_far = 3.0;
  in.self_gain = 0.5;
  in.p_self = 4.0;
  in.noise = 1.0;
  CHECK(sinr(in) == doctest::Approx(6.0 / 3.0).epsilon(1e-15));
  in.self_gain = 0.0;
  CHECK(sinr(in) == doctest::Approx(6.0).epsilon(1e-15));
  in.noise = 0.0;
  CHECK_THROWS(sinr(in));
}

TEST_CASE("rate is log2(1 + sinr)") {
  CHECK(rate(0.0) == 0.0);
  CHECK(rate(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rate(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS(rate(-0.5));
}

TEST_CASE("fading draws have the requested mean power") {
  RngStream rng(5, 0);
  const int n = 30000;
  for (const double mean : {1.0, 0.25}) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += draw_fading(rng, mean, 0.0).power();
    CHECK(acc / n == doctest::Approx(mean).epsilon(0.05));
  }
}

TEST_CASE("rician draws put k/(k+1) of the power in the fixed component") {
  RngStream rng(6, 0);
  const double k = 5.0, mean = 2.0;
  const int n = 30000;
  double acc_re = 0.0, acc_p = 0.0;
  for (int i = 0; i < n; ++i) {
    const ChannelGain h = draw_fading(rng, mean, k);
    acc_re += h.re;
    acc_p += h.power();
  }
  CHECK(acc_p / n == doctest::Approx(mean).epsilon(0.05));
  // line-of-sight amplitude sqrt(mean * k / (k + 1)) at zero phase
  CHECK(acc_re / n == doctest::Approx(std::sqrt(mean * k / (k + 1.0))).epsilon(0.05));
}

TEST_CASE("residual power models") {
  RngStream rng(7, 0);
  const RsiModel constant = ConstantPower{1e-8};
  CHECK(rsi_power(constant, 4.0, rng) == doctest::Approx(4e-8).epsilon(1e-15));

  const RsiModel rayleigh = RayleighFaded{1e-6};
  const int n = 30000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += rsi_power(rayleigh, 2.0, rng);
  CHECK(acc / n == doctest::Approx(2e-6).epsilon(0.05));

  const RsiModel rician = RicianFaded{8.0, 1e-6};
  acc = 0.0;
  for (int i = 0; i < n; ++i) acc += rsi_power(rician, 2.0, rng);
  CHECK(acc / n == doctest::Approx(2e-6).epsilon(0.05));
}

TEST_CASE("invalid channel inputs are rejected") {
  RngStream rng(1, 0);
  CHECK_THROWS(draw_fading(rng, -1.0, 0.0));
  CHECK_THROWS(draw_fading(rng, 1.0, -0.5));
  SinrInputs in;
  in.direct_power_gain = -1.0;
  in.p_far = 1.0;
  in.noise = 1.0;
  CHECK_THROWS(sinr(in));
}
