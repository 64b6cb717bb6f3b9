#pragma once

#include <variant>

#include "fdnet/rng.hpp"

namespace fdnet {

// Complex channel coefficient.
struct ChannelGain {
  double re = 0.0;
  double im = 0.0;

  double power() const { return re * re + im * im; }
};

// Residual self-interference models. Power fields are mean link powers in
// watts for a unit transmit power; the residual seen by a receiver scales
// with the local transmit power.
struct ConstantPower {
  double power = 0.0;  // fixed residual gain (W per W transmitted)
};

struct RayleighFaded {
  double mean_power = 0.0;
};

struct RicianFaded {
  double k_factor = 0.0;
  double mean_power = 0.0;
};

using RsiModel = std::variant<ConstantPower, RayleighFaded, RicianFaded>;

// Residual self-interference gain per watt transmitted for a cancellation
// depth in dB: 10^(-cancel_db / 10).
double rsi_gain_from_cancellation_db(double cancel_db);

// One Rician fading draw with the given mean power E[|h|^2] and K factor
// (ratio of line-of-sight to scattered power; 0 gives Rayleigh). The
// line-of-sight component has fixed zero phase. Consumes two normal draws.
ChannelGain draw_fading(RngStream& rng, double mean_power, double k_factor);

// Instantaneous residual self-interference power at a receiver whose local
// transmitter emits p_tx_self watts. ConstantPower uses the mean directly;
// the faded models draw one realization from rng.
double rsi_power(const RsiModel& model, double p_tx_self, RngStream& rng);

struct SinrInputs {
  double direct_power_gain = 0.0;  // |h|^2 of the far link
  double p_far = 0.0;              // far-end transmit power (W)
  double self_gain = 0.0;          // residual self-interference gain
  double p_self = 0.0;             // local transmit power (W)
  double noise = 0.0;              // noise power (W)
};

// Signal to interference-plus-noise ratio with full-duplex residual
// self-interference in the denominator:
//   direct_power_gain * p_far / (self_gain * p_self + noise).
double sinr(const SinrInputs& in);

// Spectral efficiency log2(1 + sinr_value) in bit/s/Hz.
double rate(double sinr_value);

enum class Modulation { Bpsk, Qpsk, Qam16, Qam64 };

// Symbol error probability at the given SINR. BPSK is exact,
// Q(sqrt(2*sinr)); the square constellations use the standard Gray-coded
// expression 1 - (1 - p)^2 with p = 2(1 - 1/sqrt(M)) Q(sqrt(3*sinr/(M-1))).
double ser(double sinr_value, Modulation mod);

}  // namespace fdnet
