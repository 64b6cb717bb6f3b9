#include "fdnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string_view>

namespace fdnet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view v, int line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("expected a number, got '" + std::string(v) + "'", line);
  return out;
}

std::uint64_t parse_u64(std::string_view v, int line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("expected a nonnegative integer, got '" + std::string(v) + "'",
                      line);
  return out;
}

int parse_int(std::string_view v, int line) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("expected an integer, got '" + std::string(v) + "'", line);
  return out;
}

bool parse_bool(std::string_view v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("expected true or false, got '" + std::string(v) + "'", line);
}

std::vector<double> parse_values(std::string_view v, int line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < v.size()) {
    while (pos < v.size() && (v[pos] == ' ' || v[pos] == '\t')) ++pos;
    if (pos >= v.size()) break;
    std::size_t end = pos;
    while (end < v.size() && v[end] != ' ' && v[end] != '\t') ++end;
    out.push_back(parse_double(v.substr(pos, end - pos), line));
    pos = end;
  }
  if (out.empty()) throw ConfigError("sweep_values must not be empty", line);
  return out;
}

ExperimentKind parse_kind(std::string_view v, int line) {
  if (v == "mimo_selection") return ExperimentKind::MimoSelection;
  if (v == "ofdma_matching") return ExperimentKind::OfdmaMatching;
  if (v == "relay_selection") return ExperimentKind::RelaySelection;
  if (v == "mode_switch") return ExperimentKind::ModeSwitch;
  if (v == "power_sweep") return ExperimentKind::PowerSweep;
  throw ConfigError("unknown experiment kind '" + std::string(v) + "'", line);
}

const char* kind_token(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::MimoSelection: return "mimo_selection";
    case ExperimentKind::OfdmaMatching: return "ofdma_matching";
    case ExperimentKind::RelaySelection: return "relay_selection";
    case ExperimentKind::ModeSwitch: return "mode_switch";
    case ExperimentKind::PowerSweep: default: return "power_sweep";
  }
}

RsiKind parse_rsi(std::string_view v, int line) {
  if (v == "constant") return RsiKind::Constant;
  if (v == "rayleigh") return RsiKind::Rayleigh;
  if (v == "rician") return RsiKind::Rician;
  throw ConfigError("unknown rsi_model '" + std::string(v) + "'", line);
}

const char* rsi_token(RsiKind k) {
  switch (k) {
    case RsiKind::Constant: return "constant";
    case RsiKind::Rayleigh: return "rayleigh";
    case RsiKind::Rician: default: return "rician";
  }
}

Modulation parse_modulation(std::string_view v, int line) {
  if (v == "bpsk") return Modulation::Bpsk;
  if (v == "qpsk") return Modulation::Qpsk;
  if (v == "qam16") return Modulation::Qam16;
  if (v == "qam64") return Modulation::Qam64;
  throw ConfigError("unknown modulation '" + std::string(v) + "'", line);
}

const char* modulation_token(Modulation m) {
  switch (m) {
    case Modulation::Bpsk: return "bpsk";
    case Modulation::Qpsk: return "qpsk";
    case Modulation::Qam16: return "qam16";
    case Modulation::Qam64: default: return "qam64";
  }
}

SplitRule parse_split(std::string_view v, int line) {
  if (v == "uniform") return SplitRule::Uniform;
  if (v == "water_filling") return SplitRule::WaterFilling;
  throw ConfigError("unknown split_rule '" + std::string(v) + "'", line);
}

RelayProtocol parse_protocol(std::string_view v, int line) {
  if (v == "decode_forward") return RelayProtocol::DecodeForward;
  if (v == "amplify_forward") return RelayProtocol::AmplifyForward;
  throw ConfigError("unknown protocol '" + std::string(v) + "'", line);
}

std::string fmt_double(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

void apply_key(ExperimentConfig& cfg, const std::string& section,
               std::string_view key, std::string_view value, int line) {
  const auto unknown = [&]() -> ConfigError {
    return ConfigError("unknown key '" + std::string(key) + "' in section [" +
                           section + "]",
                       line);
  };
  if (section == "experiment") {
    if (key == "kind") cfg.kind = parse_kind(value, line);
    else if (key == "trials") cfg.trials = parse_u64(value, line);
    else if (key == "base_seed") cfg.base_seed = parse_u64(value, line);
    else if (key == "sweep_param") cfg.sweep_name = std::string(value);
    else if (key == "sweep_values") cfg.sweep_values = parse_values(value, line);
    else throw unknown();
  } else if (section == "channel") {
    if (key == "noise_w") cfg.noise_w = parse_double(value, line);
    else if (key == "cancellation_db") cfg.cancellation_db = parse_double(value, line);
    else if (key == "rsi_model") cfg.rsi_model = parse_rsi(value, line);
    else if (key == "rician_k") cfg.rician_k = parse_double(value, line);
    else throw unknown();
  } else if (section == "mimo") {
    if (key == "antennas") cfg.antennas = parse_int(value, line);
    else if (key == "node_power_w") cfg.node_power_w = parse_double(value, line);
    else if (key == "modulation") cfg.modulation = parse_modulation(value, line);
    else throw unknown();
  } else if (section == "ofdma") {
    if (key == "tx_users") cfg.tx_users = parse_int(value, line);
    else if (key == "subcarriers") cfg.subcarriers = parse_int(value, line);
    else if (key == "price_step") cfg.price_step = parse_double(value, line);
    else if (key == "split_rule") cfg.split_rule = parse_split(value, line);
    else if (key == "p_user_w") cfg.p_user_w = parse_double(value, line);
    else if (key == "p_bs_total_w") cfg.p_bs_total_w = parse_double(value, line);
    else if (key == "cross_gain_mean") cfg.cross_gain_mean = parse_double(value, line);
    else if (key == "run_centralized") cfg.run_centralized = parse_bool(value, line);
    else throw unknown();
  } else if (section == "relay") {
    if (key == "relays") cfg.relays = parse_int(value, line);
    else if (key == "configs_per_relay") cfg.configs_per_relay = parse_int(value, line);
    else if (key == "p_s_w") cfg.p_s_w = parse_double(value, line);
    else if (key == "p_r_max_w") cfg.p_r_max_w = parse_double(value, line);
    else if (key == "protocol") cfg.protocol = parse_protocol(value, line);
    else if (key == "optimize_power") cfg.optimize_relay_power = parse_bool(value, line);
    else throw unknown();
  } else if (section == "mode") {
    if (key == "power_w") cfg.mode_power_w = parse_double(value, line);
    else if (key == "fading") cfg.mode_fading = parse_bool(value, line);
    else throw unknown();
  } else if (section == "power") {
    if (key == "channels") cfg.channels = parse_int(value, line);
    else if (key == "p_total_w") cfg.p_total_w = parse_double(value, line);
    else throw unknown();
  } else {
    throw ConfigError("unknown section [" + section + "]", line);
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

// Range check for one value of an integer or real parameter, used both for
// the configured base value and for every sweep value that retargets it.
void check_param_value(const ExperimentConfig& cfg, const std::string& name,
                       double v) {
  const auto integral = [&](int min_value) {
    require(std::isfinite(v) && v == std::floor(v),
            name + " must be an integer, got " + fmt_double(v));
    require(v >= min_value, name + " must be >= " + std::to_string(min_value));
  };
  require(std::isfinite(v), name + " must be finite");
  if (name == "noise_w") {
    require(v > 0.0, "noise_w must be > 0");
  } else if (name == "rician_k") {
    require(v >= 0.0, "rician_k must be >= 0");
  } else if (name == "antennas") {
    integral(2);
  } else if (name == "tx_users") {
    integral(1);
    require(v <= cfg.subcarriers,
            "tx_users must not exceed subcarriers");
    if (cfg.kind == ExperimentKind::OfdmaMatching && cfg.run_centralized)
      require(v <= 6, "centralized search requires tx_users <= 6");
  } else if (name == "subcarriers") {
    integral(1);
    require(v >= cfg.tx_users, "subcarriers must be >= tx_users");
    if (cfg.kind == ExperimentKind::OfdmaMatching && cfg.run_centralized)
      require(v <= 8, "centralized search requires subcarriers <= 8");
  } else if (name == "relays") {
    integral(1);
  } else if (name == "configs_per_relay") {
    integral(1);
  } else if (name == "channels") {
    integral(1);
  } else if (name == "node_power_w" || name == "p_user_w" ||
             name == "p_bs_total_w" || name == "p_s_w" ||
             name == "p_r_max_w" || name == "mode_power_w" ||
             name == "p_total_w" || name == "cross_gain_mean") {
    require(v >= 0.0, name + " must be >= 0");
  }
  // cancellation_db and price_step accept any finite value.
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::vector<std::string> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (value.empty()) throw ConfigError("empty value", line_no);
    if (section.empty())
      throw ConfigError("key outside of any section", line_no);
    const std::string qualified = section + "." + std::string(key);
    if (std::find(seen.begin(), seen.end(), qualified) != seen.end())
      throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
    seen.push_back(qualified);
    apply_key(cfg, section, key, value, line_no);
  }
  validate_config(cfg);
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "kind = " << kind_token(cfg.kind) << "\n";
  out << "trials = " << cfg.trials << "\n";
  out << "base_seed = " << cfg.base_seed << "\n";
  out << "sweep_param = " << cfg.sweep_name << "\n";
  out << "sweep_values =";
  for (const double v : cfg.sweep_values) out << " " << fmt_double(v);
  out << "\n";
  out << "\n[channel]\n";
  out << "noise_w = " << fmt_double(cfg.noise_w) << "\n";
  out << "cancellation_db = " << fmt_double(cfg.cancellation_db) << "\n";
  out << "rsi_model = " << rsi_token(cfg.rsi_model) << "\n";
  out << "rician_k = " << fmt_double(cfg.rician_k) << "\n";
  out << "\n[mimo]\n";
  out << "antennas = " << cfg.antennas << "\n";
  out << "node_power_w = " << fmt_double(cfg.node_power_w) << "\n";
  out << "modulation = " << modulation_token(cfg.modulation) << "\n";
  out << "\n[ofdma]\n";
  out << "tx_users = " << cfg.tx_users << "\n";
  out << "subcarriers = " << cfg.subcarriers << "\n";
  out << "price_step = " << fmt_double(cfg.price_step) << "\n";
  out << "split_rule = "
      << (cfg.split_rule == SplitRule::Uniform ? "uniform" : "water_filling")
      << "\n";
  out << "p_user_w = " << fmt_double(cfg.p_user_w) << "\n";
  out << "p_bs_total_w = " << fmt_double(cfg.p_bs_total_w) << "\n";
  out << "cross_gain_mean = " << fmt_double(cfg.cross_gain_mean) << "\n";
  out << "run_centralized = " << (cfg.run_centralized ? "true" : "false")
      << "\n";
  out << "\n[relay]\n";
  out << "relays = " << cfg.relays << "\n";
  out << "configs_per_relay = " << cfg.configs_per_relay << "\n";
  out << "p_s_w = " << fmt_double(cfg.p_s_w) << "\n";
  out << "p_r_max_w = " << fmt_double(cfg.p_r_max_w) << "\n";
  out << "protocol = "
      << (cfg.protocol == RelayProtocol::DecodeForward ? "decode_forward"
                                                       : "amplify_forward")
      << "\n";
  out << "optimize_power = " << (cfg.optimize_relay_power ? "true" : "false")
      << "\n";
  out << "\n[mode]\n";
  out << "power_w = " << fmt_double(cfg.mode_power_w) << "\n";
  out << "fading = " << (cfg.mode_fading ? "true" : "false") << "\n";
  out << "\n[power]\n";
  out << "channels = " << cfg.channels << "\n";
  out << "p_total_w = " << fmt_double(cfg.p_total_w) << "\n";
  return out.str();
}

void validate_config(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, "trials must be >= 1");
  require(!cfg.sweep_values.empty(), "sweep_values must not be empty");
  for (const double v : cfg.sweep_values)
    require(std::isfinite(v), "sweep values must be finite");
  if (cfg.sweep_values.size() >= 2) {
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < cfg.sweep_values.size(); ++i) {
      if (!(cfg.sweep_values[i] > cfg.sweep_values[i - 1])) inc = false;
      if (!(cfg.sweep_values[i] < cfg.sweep_values[i - 1])) dec = false;
    }
    require(inc || dec, "sweep_values must be strictly monotone");
  }

  const auto allowed = sweepable_params(cfg.kind);
  require(std::find(allowed.begin(), allowed.end(), cfg.sweep_name) !=
              allowed.end(),
          "parameter '" + cfg.sweep_name + "' is not sweepable for kind " +
              kind_token(cfg.kind));

  check_param_value(cfg, "noise_w", cfg.noise_w);
  require(std::isfinite(cfg.cancellation_db), "cancellation_db must be finite");
  check_param_value(cfg, "rician_k", cfg.rician_k);
  switch (cfg.kind) {
    case ExperimentKind::MimoSelection:
      check_param_value(cfg, "antennas", cfg.antennas);
      check_param_value(cfg, "node_power_w", cfg.node_power_w);
      break;
    case ExperimentKind::OfdmaMatching:
      check_param_value(cfg, "tx_users", cfg.tx_users);
      check_param_value(cfg, "subcarriers", cfg.subcarriers);
      check_param_value(cfg, "p_user_w", cfg.p_user_w);
      check_param_value(cfg, "p_bs_total_w", cfg.p_bs_total_w);
      check_param_value(cfg, "cross_gain_mean", cfg.cross_gain_mean);
      require(std::isfinite(cfg.price_step), "price_step must be finite");
      break;
    case ExperimentKind::RelaySelection:
      check_param_value(cfg, "relays", cfg.relays);
      check_param_value(cfg, "configs_per_relay", cfg.configs_per_relay);
      check_param_value(cfg, "p_s_w", cfg.p_s_w);
      check_param_value(cfg, "p_r_max_w", cfg.p_r_max_w);
      break;
    case ExperimentKind::ModeSwitch:
      check_param_value(cfg, "mode_power_w", cfg.mode_power_w);
      break;
    case ExperimentKind::PowerSweep:
      check_param_value(cfg, "channels", cfg.channels);
      check_param_value(cfg, "p_total_w", cfg.p_total_w);
      break;
  }
  for (const double v : cfg.sweep_values)
    check_param_value(cfg, cfg.sweep_name, v);
}

}  // namespace fdnet
