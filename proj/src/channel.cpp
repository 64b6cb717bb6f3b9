#include "fdnet/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace fdnet {

namespace {

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

void require_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0)
    throw std::invalid_argument(std::string(what) +
                                " must be finite and nonnegative");
}

}  // namespace

double rsi_gain_from_cancellation_db(double cancel_db) {
  if (!std::isfinite(cancel_db))
    throw std::invalid_argument("cancellation must be finite");
  return std::pow(10.0, -cancel_db / 10.0);
}

ChannelGain draw_fading(RngStream& rng, double mean_power, double k_factor) {
  require_finite_nonneg(mean_power, "mean_power");
  require_finite_nonneg(k_factor, "k_factor");
  const double los_power = mean_power * k_factor / (k_factor + 1.0);
  const double scatter_power = mean_power / (k_factor + 1.0);
  const double s = std::sqrt(scatter_power / 2.0);
  const double n_re = rng.normal();
  const double n_im = rng.normal();
  return {std::sqrt(los_power) + s * n_re, s * n_im};
}

double rsi_power(const RsiModel& model, double p_tx_self, RngStream& rng) {
  require_finite_nonneg(p_tx_self, "p_tx_self");
  if (const auto* c = std::get_if<ConstantPower>(&model)) {
    require_finite_nonneg(c->power, "rsi power");
    return c->power * p_tx_self;
  }
  if (const auto* r = std::get_if<RayleighFaded>(&model)) {
    return draw_fading(rng, r->mean_power, 0.0).power() * p_tx_self;
  }
  const auto& rc = std::get<RicianFaded>(model);
  return draw_fading(rng, rc.mean_power, rc.k_factor).power() * p_tx_self;
}

double sinr(const SinrInputs& in) {
  require_finite_nonneg(in.direct_power_gain, "direct_power_gain");
  require_finite_nonneg(in.p_far, "p_far");
  require_finite_nonneg(in.self_gain, "self_gain");
  require_finite_nonneg(in.p_self, "p_self");
  require_finite_nonneg(in.noise, "noise");
  const double denom = in.self_gain * in.p_self + in.noise;
  if (denom <= 0.0)
    throw std::invalid_argument("sinr: interference plus noise must be positive");
  return in.direct_power_gain * in.p_far / denom;
}

double rate(double sinr_value) {
  if (!std::isfinite(sinr_value) || sinr_value < 0.0)
    throw std::invalid_argument("rate: sinr must be finite and nonnegative");
  return std::log2(1.0 + sinr_value);
}

double ser(double sinr_value, Modulation mod) {
  if (!std::isfinite(sinr_value) || sinr_value < 0.0)
    throw std::invalid_argument("ser: sinr must be finite and nonnegative");
  switch (mod) {
    case Modulation::Bpsk:
      return q_function(std::sqrt(2.0 * sinr_value));
    case Modulation::Qpsk:
    case Modulation::Qam16:
    case Modulation::Qam64: {
      const double m = mod == Modulation::Qpsk   ? 4.0
                       : mod == Modulation::Qam16 ? 16.0
                                                  : 64.0;
      const double p = 2.0 * (1.0 - 1.0 / std::sqrt(m)) *
                       q_function(std::sqrt(3.0 * sinr_value / (m - 1.0)));
      return 1.0 - (1.0 - p) * (1.0 - p);
    }
  }
  throw std::invalid_argument("ser: unknown modulation");
}

}  // namespace fdnet
