#include "fdnet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fdnet/waterfill.hpp"

namespace fdnet {

namespace {

RsiModel make_rsi_model(const ExperimentConfig& cfg) {
  const double gain = rsi_gain_from_cancellation_db(cfg.cancellation_db);
  switch (cfg.rsi_model) {
    case RsiKind::Rayleigh:
      return RayleighFaded{gain};
    case RsiKind::Rician:
      return RicianFaded{cfg.rician_k, gain};
    case RsiKind::Constant:
    default:
      return ConstantPower{gain};
  }
}

double unit_rayleigh_power(RngStream& rng) {
  return draw_fading(rng, 1.0, 0.0).power();
}

// Residual gain per watt under the config's model (one realization for the
// faded models, no draw for the constant one).
double draw_rsi_gain(const RsiModel& model, RngStream& rng) {
  return rsi_power(model, 1.0, rng);
}

int to_int_param(double v, const char* name) {
  if (!std::isfinite(v) || v != std::floor(v) || std::fabs(v) > 1e9)
    throw std::invalid_argument(std::string("sweep value for ") + name +
                                " must be an integer");
  return static_cast<int>(v);
}

ExperimentConfig apply_sweep(const ExperimentConfig& cfg,
                             const std::string& name, double v) {
  ExperimentConfig out = cfg;
  if (name == "cancellation_db") {
    out.cancellation_db = v;
  } else if (name == "noise_w") {
    out.noise_w = v;
  } else if (name == "rician_k") {
    out.rician_k = v;
  } else if (name == "antennas") {
    out.antennas = to_int_param(v, "antennas");
  } else if (name == "node_power_w") {
    out.node_power_w = v;
  } else if (name == "tx_users") {
    out.tx_users = to_int_param(v, "tx_users");
  } else if (name == "subcarriers") {
    out.subcarriers = to_int_param(v, "subcarriers");
  } else if (name == "p_user_w") {
    out.p_user_w = v;
  } else if (name == "p_bs_total_w") {
    out.p_bs_total_w = v;
  } else if (name == "cross_gain_mean") {
    out.cross_gain_mean = v;
  } else if (name == "price_step") {
    out.price_step = v;
  } else if (name == "relays") {
    out.relays = to_int_param(v, "relays");
  } else if (name == "configs_per_relay") {
    out.configs_per_relay = to_int_param(v, "configs_per_relay");
  } else if (name == "p_s_w") {
    out.p_s_w = v;
  } else if (name == "p_r_max_w") {
    out.p_r_max_w = v;
  } else if (name == "mode_power_w") {
    out.mode_power_w = v;
  } else if (name == "channels") {
    out.channels = to_int_param(v, "channels");
  } else if (name == "p_total_w") {
    out.p_total_w = v;
  } else {
    throw std::invalid_argument("unknown sweep parameter: " + name);
  }
  return out;
}

std::vector<std::string> metric_names(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::MimoSelection:
      return {"sum_rate_selected", "sum_rate_fixed", "sum_ser_selected",
              "sum_ser_fixed"};
    case ExperimentKind::OfdmaMatching:
      if (cfg.run_centralized)
        return {"sum_rate_matched", "sum_rate_centralized", "sum_rate_random",
                "auction_rounds"};
      return {"sum_rate_matched", "sum_rate_random", "auction_rounds"};
    case ExperimentKind::RelaySelection:
      return {"best_sinr", "best_rate", "relay_power_w"};
    case ExperimentKind::ModeSwitch:
      return {"fd_rate", "hd_rate", "fd_selected"};
    case ExperimentKind::PowerSweep:
    default:
      return {"waterfill_sum_rate", "uniform_sum_rate", "water_level"};
  }
}

void trial_mimo(const ExperimentConfig& cfg, RngStream& rng, double* out) {
  const MimoScenario scn = generate_mimo_scenario(cfg, cfg.antennas, rng);
  const SelectionResult by_rate = select_max_sum_rate(scn);
  const SelectionResult by_ser = select_min_sum_ser(scn, cfg.modulation);
  const LinkSelection fixed{1, 2, 1, 2};
  const auto [at_a, at_b] = bidirectional_sinrs(scn, fixed);
  out[0] = by_rate.objective;
  out[1] = rate(at_a) + rate(at_b);
  out[2] = by_ser.objective;
  out[3] = ser(at_a, cfg.modulation) + ser(at_b, cfg.modulation);
}

void trial_ofdma(const ExperimentConfig& cfg, RngStream& rng, double* out) {
  const OfdmaScenario scn = generate_ofdma_scenario(
      cfg, cfg.tx_users, cfg.subcarriers, cfg.p_user_w, rng);
  const MatchingResult mr =
      price_matching(scn, cfg.split_rule, cfg.price_step);
  const double matched = sum_rate(
      scn, mr.assignment, split_bs_power(scn, mr.assignment, cfg.split_rule));
  std::size_t at = 0;
  out[at++] = matched;
  if (cfg.run_centralized)
    out[at++] = centralized_exhaustive(scn, cfg.split_rule).sum_rate;
  const PairingAssignment rnd = random_matching(scn, rng);
  out[at++] = sum_rate(scn, rnd, split_bs_power(scn, rnd, cfg.split_rule));
  out[at++] = static_cast<double>(mr.iterations);
}

void trial_relay(const ExperimentConfig& cfg, RngStream& rng, double* out) {
  const RelayScenario scn = generate_relay_scenario(cfg, cfg.relays, rng);
  double best_sinr = -1.0;
  double best_p = cfg.p_r_max_w;
  if (cfg.optimize_relay_power) {
    for (int r = 0; r < scn.n_relays(); ++r)
      for (int c = 0; c < static_cast<int>(scn.relays[r].size()); ++c) {
        const RelayPowerResult res =
            optimal_relay_power(scn, r, c, cfg.protocol);
        if (res.sinr > best_sinr) {
          best_sinr = res.sinr;
          best_p = res.p_r;
        }
      }
  } else {
    const RelayChoice choice =
        select_relay_antenna(scn, cfg.p_r_max_w, cfg.protocol);
    best_sinr = choice.sinr;
  }
  out[0] = best_sinr;
  out[1] = rate(best_sinr);
  out[2] = best_p;
}

void trial_mode(const ExperimentConfig& cfg, RngStream& rng, double* out) {
  const RsiModel model = make_rsi_model(cfg);
  const double p = cfg.mode_power_w;
  const double g_ab = cfg.mode_fading ? unit_rayleigh_power(rng) : 1.0;
  const double g_ba = cfg.mode_fading ? unit_rayleigh_power(rng) : 1.0;
  const double rsi_at_a = rsi_power(model, p, rng);
  const double rsi_at_b = rsi_power(model, p, rng);
  const double fd_a = g_ba * p / (rsi_at_a + cfg.noise_w);
  const double fd_b = g_ab * p / (rsi_at_b + cfg.noise_w);
  const double hd_a = g_ba * p / cfg.noise_w;
  const double hd_b = g_ab * p / cfg.noise_w;
  const ModeDecision d = mode_switch(fd_a, fd_b, hd_a, hd_b);
  out[0] = d.fd_rate;
  out[1] = d.hd_rate;
  out[2] = d.full_duplex ? 1.0 : 0.0;
}

void trial_power(const ExperimentConfig& cfg, RngStream& rng, double* out) {
  const ParallelChannels ch =
      generate_parallel_channels(cfg, cfg.channels, cfg.p_total_w, rng);
  const Allocation alloc = waterfill(ch);
  double wf = 0.0, uni = 0.0;
  const double share = ch.p_total / static_cast<double>(ch.eff_gain.size());
  for (std::size_t i = 0; i < ch.eff_gain.size(); ++i) {
    wf += rate(ch.eff_gain[i] * alloc.power[i]);
    uni += rate(ch.eff_gain[i] * share);
  }
  out[0] = wf;
  out[1] = uni;
  out[2] = alloc.water_level;
}

void run_trial(const ExperimentConfig& cfg, RngStream& rng, double* out) {
  switch (cfg.kind) {
    case ExperimentKind::MimoSelection:
      trial_mimo(cfg, rng, out);
      return;
    case ExperimentKind::OfdmaMatching:
      trial_ofdma(cfg, rng, out);
      return;
    case ExperimentKind::RelaySelection:
      trial_relay(cfg, rng, out);
      return;
    case ExperimentKind::ModeSwitch:
      trial_mode(cfg, rng, out);
      return;
    case ExperimentKind::PowerSweep:
      trial_power(cfg, rng, out);
      return;
  }
  throw std::logic_error("unhandled experiment kind");
}

}  // namespace

MimoScenario generate_mimo_scenario(const ExperimentConfig& cfg, int antennas,
                                    RngStream& rng) {
  if (antennas < 2)
    throw std::invalid_argument("antenna selection needs at least 2 antennas");
  const RsiModel model = make_rsi_model(cfg);
  const auto n = static_cast<std::size_t>(antennas);
  MimoScenario scn;
  scn.n_a = antennas;
  scn.n_b = antennas;
  scn.h_ab = Matrix<ChannelGain>(n, n);
  scn.h_ba = Matrix<ChannelGain>(n, n);
  scn.rsi_a = Matrix<double>(n, n);
  scn.rsi_b = Matrix<double>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scn.h_ab(i, j) = draw_fading(rng, 1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scn.h_ba(i, j) = draw_fading(rng, 1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scn.rsi_a(i, j) = draw_rsi_gain(model, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scn.rsi_b(i, j) = draw_rsi_gain(model, rng);
  scn.p_a = cfg.node_power_w;
  scn.p_b = cfg.node_power_w;
  scn.noise = cfg.noise_w;
  return scn;
}

OfdmaScenario generate_ofdma_scenario(const ExperimentConfig& cfg, int tx_users,
                                      int subcarriers, double p_user_w,
                                      RngStream& rng) {
  if (tx_users < 1 || subcarriers < tx_users)
    throw std::invalid_argument(
        "ofdma generation needs 1 <= tx_users <= subcarriers");
  const RsiModel model = make_rsi_model(cfg);
  const auto m = static_cast<std::size_t>(tx_users);
  const auto k = static_cast<std::size_t>(subcarriers);
  OfdmaScenario scn;
  scn.m = tx_users;
  scn.k = subcarriers;
  scn.g_up = Matrix<double>(m, k);
  scn.g_down = Matrix<double>(m, k);
  scn.g_cross = Cube<double>(m, m, k);
  scn.rsi_bs.resize(k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t kk = 0; kk < k; ++kk)
      scn.g_up(i, kk) = unit_rayleigh_power(rng);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t kk = 0; kk < k; ++kk)
      scn.g_down(j, kk) = unit_rayleigh_power(rng);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t kk = 0; kk < k; ++kk)
        scn.g_cross(i, j, kk) =
            draw_fading(rng, cfg.cross_gain_mean, 0.0).power();
  // Base-station self-interference is calibrated at the uniform split's
  // nominal per-unit transmit power.
  const double p_unit = cfg.p_bs_total_w / static_cast<double>(tx_users);
  for (std::size_t kk = 0; kk < k; ++kk)
    scn.rsi_bs[kk] = rsi_power(model, p_unit, rng);
  scn.p_user = p_user_w;
  scn.p_bs_total = cfg.p_bs_total_w;
  scn.noise = cfg.noise_w;
  return scn;
}

RelayScenario generate_relay_scenario(const ExperimentConfig& cfg, int relays,
                                      RngStream& rng) {
  if (relays < 1 || cfg.configs_per_relay < 1)
    throw std::invalid_argument(
        "relay generation needs at least one relay and one configuration");
  const RsiModel model = make_rsi_model(cfg);
  // Smallest antenna array offering enough ordered transmit/receive pairs.
  int n_ant = 2;
  while (n_ant * (n_ant - 1) < cfg.configs_per_relay) ++n_ant;
  std::vector<std::pair<int, int>> pairs;
  for (int t = 1; t <= n_ant && static_cast<int>(pairs.size()) < cfg.configs_per_relay; ++t)
    for (int r = 1; r <= n_ant && static_cast<int>(pairs.size()) < cfg.configs_per_relay; ++r)
      if (t != r) pairs.emplace_back(t, r);

  RelayScenario scn;
  scn.relays.resize(static_cast<std::size_t>(relays));
  for (auto& configs : scn.relays) {
    configs.reserve(pairs.size());
    for (const auto& [t, r] : pairs) {
      RelayAntennaConfig c;
      c.tx_antenna = t;
      c.rx_antenna = r;
      c.h_sr = draw_fading(rng, 1.0, 0.0);
      c.h_rd = draw_fading(rng, 1.0, 0.0);
      c.rsi_gain = draw_rsi_gain(model, rng);
      configs.push_back(c);
    }
  }
  scn.h_sd = std::nullopt;
  scn.p_s = cfg.p_s_w;
  scn.p_r_max = cfg.p_r_max_w;
  scn.noise = cfg.noise_w;
  return scn;
}

ParallelChannels generate_parallel_channels(const ExperimentConfig& cfg,
                                            int channels, double p_total_w,
                                            RngStream& rng) {
  if (channels < 1)
    throw std::invalid_argument("need at least one parallel channel");
  ParallelChannels ch;
  ch.eff_gain.reserve(static_cast<std::size_t>(channels));
  for (int i = 0; i < channels; ++i)
    ch.eff_gain.push_back(unit_rayleigh_power(rng) / cfg.noise_w);
  ch.p_total = p_total_w;
  return ch;
}

int resolve_threads(int requested) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int t = requested > 0 ? requested : hw;
  if (const char* env = std::getenv("FDNET_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1)
      throw std::invalid_argument("FDNET_THREADS must be a positive integer");
    t = std::min<long>(t, cap);
  }
  return std::max(1, t);
}

std::vector<std::string> sweepable_params(ExperimentKind kind) {
  std::vector<std::string> names = {"cancellation_db", "noise_w", "rician_k"};
  switch (kind) {
    case ExperimentKind::MimoSelection:
      names.insert(names.end(), {"antennas", "node_power_w"});
      break;
    case ExperimentKind::OfdmaMatching:
      names.insert(names.end(), {"tx_users", "subcarriers", "p_user_w",
                                 "p_bs_total_w", "cross_gain_mean",
                                 "price_step"});
      break;
    case ExperimentKind::RelaySelection:
      names.insert(names.end(),
                   {"relays", "configs_per_relay", "p_s_w", "p_r_max_w"});
      break;
    case ExperimentKind::ModeSwitch:
      names.push_back("mode_power_w");
      break;
    case ExperimentKind::PowerSweep:
      names.insert(names.end(), {"channels", "p_total_w"});
      break;
  }
  return names;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg,
                                         int threads) {
  if (cfg.trials < 1)
    throw std::invalid_argument("experiment needs at least one trial");
  if (cfg.sweep_values.empty())
    throw std::invalid_argument("experiment needs at least one sweep value");
  const auto allowed = sweepable_params(cfg.kind);
  if (std::find(allowed.begin(), allowed.end(), cfg.sweep_name) ==
      allowed.end())
    throw std::invalid_argument("parameter '" + cfg.sweep_name +
                                "' is not sweepable for this experiment kind");

  const auto n_threads = static_cast<std::uint64_t>(resolve_threads(threads));
  std::vector<ResultRecord> records;

  for (const double sv : cfg.sweep_values) {
    const ExperimentConfig swept = apply_sweep(cfg, cfg.sweep_name, sv);
    const std::vector<std::string> names = metric_names(swept);
    const std::size_t nm = names.size();
    std::vector<double> slots(cfg.trials * nm);

    // Trial t always draws from RngStream(base_seed, t) and writes its own
    // slot, so the aggregate is independent of scheduling.
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&]() {
      for (;;) {
        const std::uint64_t t = next.fetch_add(1);
        if (t >= cfg.trials) return;
        try {
          RngStream rng(cfg.base_seed, t);
          run_trial(swept, rng, &slots[t * nm]);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    if (n_threads <= 1 || cfg.trials == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      const std::uint64_t spawn = std::min<std::uint64_t>(n_threads, cfg.trials);
      pool.reserve(spawn);
      for (std::uint64_t i = 0; i < spawn; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t j = 0; j < nm; ++j) {
      double sum = 0.0;
      for (std::uint64_t t = 0; t < cfg.trials; ++t) sum += slots[t * nm + j];
      const double mean = sum / static_cast<double>(cfg.trials);
      double se = 0.0;
      if (cfg.trials > 1) {
        double ss = 0.0;
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
          const double d = slots[t * nm + j] - mean;
          ss += d * d;
        }
        se = std::sqrt(ss / static_cast<double>(cfg.trials - 1) /
                       static_cast<double>(cfg.trials));
      }
      records.push_back({cfg.sweep_name, sv, names[j], mean, se, cfg.trials});
    }
  }
  return records;
}

}  // namespace fdnet
