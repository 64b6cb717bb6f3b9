#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdnet/channel.hpp"
#include "fdnet/mimo.hpp"
#include "fdnet/ofdma.hpp"
#include "fdnet/relay.hpp"
#include "fdnet/waterfill.hpp"

namespace fdnet {

enum class ExperimentKind {
  MimoSelection,
  OfdmaMatching,
  RelaySelection,
  ModeSwitch,
  PowerSweep,
};

enum class RsiKind { Constant, Rayleigh, Rician };

// Complete description of one Monte-Carlo experiment: what to simulate,
// which parameter to sweep, and every fixed model parameter. Defaults give
// a valid experiment for every kind.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::MimoSelection;
  std::uint64_t trials = 10000;
  std::uint64_t base_seed = 1;

  std::string sweep_name = "antennas";
  std::vector<double> sweep_values = {3, 4, 5};

  // Channel model.
  double noise_w = 1.0;
  double cancellation_db = 80.0;
  RsiKind rsi_model = RsiKind::Constant;
  double rician_k = 5.0;

  // MimoSelection.
  int antennas = 3;
  double node_power_w = 1.0;
  Modulation modulation = Modulation::Bpsk;

  // OfdmaMatching.
  int tx_users = 3;
  int subcarriers = 4;
  double price_step = 0.0;  // <= 0 selects 1e-3 * max unit rate
  SplitRule split_rule = SplitRule::Uniform;
  double p_user_w = 1.0;
  double p_bs_total_w = 10.0;
  double cross_gain_mean = 1.0;
  bool run_centralized = true;

  // RelaySelection.
  int relays = 4;
  int configs_per_relay = 2;
  double p_s_w = 1.0;
  double p_r_max_w = 2.0;
  RelayProtocol protocol = RelayProtocol::DecodeForward;
  bool optimize_relay_power = true;

  // ModeSwitch.
  double mode_power_w = 4.0;
  bool mode_fading = false;

  // PowerSweep.
  int channels = 4;
  double p_total_w = 1.0;
};

// One aggregated metric at one sweep value.
struct ResultRecord {
  std::string sweep_param;
  double sweep_value = 0.0;
  std::string metric;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// Scenario generators used by the harness; exposed so tests and bindings
// can draw the same populations. Channel coefficients are unit-mean-power
// Rayleigh unless stated otherwise; residual self-interference follows the
// config's model at its cancellation depth. Each generator consumes a fixed
// number of draws from rng for given dimensions.
MimoScenario generate_mimo_scenario(const ExperimentConfig& cfg, int antennas,
                                    RngStream& rng);
OfdmaScenario generate_ofdma_scenario(const ExperimentConfig& cfg, int tx_users,
                                      int subcarriers, double p_user_w,
                                      RngStream& rng);
RelayScenario generate_relay_scenario(const ExperimentConfig& cfg, int relays,
                                      RngStream& rng);
ParallelChannels generate_parallel_channels(const ExperimentConfig& cfg,
                                            int channels, double p_total_w,
                                            RngStream& rng);

// Runs the experiment: for every sweep value, `trials` independent trials,
// trial t drawing from RngStream(base_seed, t). Records come out ordered by
// sweep value (config order), then by a fixed per-kind metric order, and are
// bitwise identical for a given config regardless of `threads` (0 picks the
// hardware count; the FDNET_THREADS environment variable caps it).
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg,
                                         int threads = 0);

// Effective thread count: requested (0 = hardware), capped by FDNET_THREADS.
int resolve_threads(int requested);

// Config parameter names a given experiment kind can sweep over.
std::vector<std::string> sweepable_params(ExperimentKind kind);

}  // namespace fdnet
