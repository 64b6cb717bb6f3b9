#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdnet/channel.hpp"
#include "fdnet/config.hpp"
#include "fdnet/csv.hpp"
#include "fdnet/harness.hpp"
#include "fdnet/mimo.hpp"
#include "fdnet/ofdma.hpp"
#include "fdnet/relay.hpp"
#include "fdnet/rng.hpp"
#include "fdnet/waterfill.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_fdnet, m) {
  m.doc() =
      "Deterministic simulator and algorithms for resource allocation in "
      "full-duplex wireless networks";

  py::class_<fdnet::RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream_id"))
      .def_property_readonly("seed", &fdnet::RngStream::seed)
      .def_property_readonly("stream_id", &fdnet::RngStream::stream_id)
      .def("next_u64", &fdnet::RngStream::next_u64)
      .def("uniform", &fdnet::RngStream::uniform)
      .def("normal", &fdnet::RngStream::normal)
      .def("uniform_below", &fdnet::RngStream::uniform_below, py::arg("n"));

  py::class_<fdnet::ChannelGain>(m, "ChannelGain")
      .def(py::init<double, double>(), py::arg("re") = 0.0, py::arg("im") = 0.0)
      .def_readwrite("re", &fdnet::ChannelGain::re)
      .def_readwrite("im", &fdnet::ChannelGain::im)
      .def("power", &fdnet::ChannelGain::power);

  py::enum_<fdnet::Modulation>(m, "Modulation")
      .value("BPSK", fdnet::Modulation::Bpsk)
      .value("QPSK", fdnet::Modulation::Qpsk)
      .value("QAM16", fdnet::Modulation::Qam16)
      .value("QAM64", fdnet::Modulation::Qam64);

  py::enum_<fdnet::SplitRule>(m, "SplitRule")
      .value("UNIFORM", fdnet::SplitRule::Uniform)
      .value("WATER_FILLING", fdnet::SplitRule::WaterFilling);

  py::enum_<fdnet::RelayProtocol>(m, "RelayProtocol")
      .value("DECODE_FORWARD", fdnet::RelayProtocol::DecodeForward)
      .value("AMPLIFY_FORWARD", fdnet::RelayProtocol::AmplifyForward);

  py::enum_<fdnet::ExperimentKind>(m, "ExperimentKind")
      .value("MIMO_SELECTION", fdnet::ExperimentKind::MimoSelection)
      .value("OFDMA_MATCHING", fdnet::ExperimentKind::OfdmaMatching)
      .value("RELAY_SELECTION", fdnet::ExperimentKind::RelaySelection)
      .value("MODE_SWITCH", fdnet::ExperimentKind::ModeSwitch)
      .value("POWER_SWEEP", fdnet::ExperimentKind::PowerSweep);

  py::enum_<fdnet::RsiKind>(m, "RsiKind")
      .value("CONSTANT", fdnet::RsiKind::Constant)
      .value("RAYLEIGH", fdnet::RsiKind::Rayleigh)
      .value("RICIAN", fdnet::RsiKind::Rician);

  m.def("rsi_gain_from_cancellation_db", &fdnet::rsi_gain_from_cancellation_db,
        py::arg("cancel_db"));
  m.def("rate", &fdnet::rate, py::arg("sinr"));
  m.def("ser", &fdnet::ser, py::arg("sinr"), py::arg("modulation"));

  // MIMO antenna selection.
  py::class_<fdnet::MimoScenario>(m, "MimoScenario")
      .def_readonly("n_a", &fdnet::MimoScenario::n_a)
      .def_readonly("n_b", &fdnet::MimoScenario::n_b)
      .def_readonly("p_a", &fdnet::MimoScenario::p_a)
      .def_readonly("p_b", &fdnet::MimoScenario::p_b)
      .def_readonly("noise", &fdnet::MimoScenario::noise);

  py::class_<fdnet::LinkSelection>(m, "LinkSelection")
      .def(py::init<int, int, int, int>(), py::arg("a_tx"), py::arg("a_rx"),
           py::arg("b_tx"), py::arg("b_rx"))
      .def_readonly("a_tx", &fdnet::LinkSelection::a_tx)
      .def_readonly("a_rx", &fdnet::LinkSelection::a_rx)
      .def_readonly("b_tx", &fdnet::LinkSelection::b_tx)
      .def_readonly("b_rx", &fdnet::LinkSelection::b_rx)
      .def(py::self == py::self);

  py::class_<fdnet::SelectionResult>(m, "SelectionResult")
      .def_readonly("selection", &fdnet::SelectionResult::selection)
      .def_readonly("sinr_at_a", &fdnet::SelectionResult::sinr_at_a)
      .def_readonly("sinr_at_b", &fdnet::SelectionResult::sinr_at_b)
      .def_readonly("objective", &fdnet::SelectionResult::objective);

  m.def("enumerate_selections", &fdnet::enumerate_selections, py::arg("n_a"),
        py::arg("n_b"));
  m.def("bidirectional_sinrs", &fdnet::bidirectional_sinrs, py::arg("scenario"),
        py::arg("selection"));
  m.def("select_max_sum_rate", &fdnet::select_max_sum_rate, py::arg("scenario"));
  m.def("select_min_sum_ser", &fdnet::select_min_sum_ser, py::arg("scenario"),
        py::arg("modulation"));

  // OFDMA subcarrier/user matching.
  py::class_<fdnet::OfdmaScenario>(m, "OfdmaScenario")
      .def_readonly("m", &fdnet::OfdmaScenario::m)
      .def_readonly("k", &fdnet::OfdmaScenario::k)
      .def_readonly("p_user", &fdnet::OfdmaScenario::p_user)
      .def_readonly("p_bs_total", &fdnet::OfdmaScenario::p_bs_total)
      .def_readonly("noise", &fdnet::OfdmaScenario::noise);

  py::class_<fdnet::PairingTriple>(m, "PairingTriple")
      .def(py::init<int, int, int>(), py::arg("subcarrier"), py::arg("tx"),
           py::arg("rx"))
      .def_readonly("subcarrier", &fdnet::PairingTriple::subcarrier)
      .def_readonly("tx", &fdnet::PairingTriple::tx)
      .def_readonly("rx", &fdnet::PairingTriple::rx)
      .def(py::self == py::self);

  py::class_<fdnet::PairingAssignment>(m, "PairingAssignment")
      .def(py::init<>())
      .def_readwrite("triples", &fdnet::PairingAssignment::triples);

  py::class_<fdnet::PriceState>(m, "PriceState")
      .def_readonly("rx_price", &fdnet::PriceState::rx_price)
      .def_readonly("subcarrier_price", &fdnet::PriceState::subcarrier_price);

  py::class_<fdnet::MatchingResult>(m, "MatchingResult")
      .def_readonly("assignment", &fdnet::MatchingResult::assignment)
      .def_readonly("prices", &fdnet::MatchingResult::prices)
      .def_readonly("iterations", &fdnet::MatchingResult::iterations);

  py::class_<fdnet::CentralizedResult>(m, "CentralizedResult")
      .def_readonly("assignment", &fdnet::CentralizedResult::assignment)
      .def_readonly("sum_rate", &fdnet::CentralizedResult::sum_rate)
      .def_readonly("candidates_evaluated",
                    &fdnet::CentralizedResult::candidates_evaluated);

  py::class_<fdnet::PowerSplit>(m, "PowerSplit")
      .def_readonly("p_down", &fdnet::PowerSplit::p_down);

  m.def("unit_rate", &fdnet::unit_rate, py::arg("scenario"), py::arg("tx"),
        py::arg("rx"), py::arg("subcarrier"), py::arg("p_down"));
  m.def("split_bs_power", &fdnet::split_bs_power, py::arg("scenario"),
        py::arg("assignment"), py::arg("rule"));
  m.def("sum_rate", &fdnet::sum_rate, py::arg("scenario"), py::arg("assignment"),
        py::arg("split"));
  m.def("price_matching", &fdnet::price_matching, py::arg("scenario"),
        py::arg("rule") = fdnet::SplitRule::Uniform, py::arg("epsilon") = 0.0);
  m.def("centralized_exhaustive", &fdnet::centralized_exhaustive,
        py::arg("scenario"), py::arg("rule") = fdnet::SplitRule::Uniform);
  m.def("random_matching", &fdnet::random_matching, py::arg("scenario"),
        py::arg("rng"));
  m.def("is_feasible", &fdnet::is_feasible, py::arg("assignment"), py::arg("m"),
        py::arg("k"));

  // Relay selection, power control and duplex mode switching.
  py::class_<fdnet::RelayScenario>(m, "RelayScenario")
      .def_readonly("p_s", &fdnet::RelayScenario::p_s)
      .def_readonly("p_r_max", &fdnet::RelayScenario::p_r_max)
      .def_readonly("noise", &fdnet::RelayScenario::noise)
      .def_property_readonly("n_relays", &fdnet::RelayScenario::n_relays);

  py::class_<fdnet::RelayChoice>(m, "RelayChoice")
      .def_readonly("relay", &fdnet::RelayChoice::relay)
      .def_readonly("config", &fdnet::RelayChoice::config)
      .def_readonly("sinr", &fdnet::RelayChoice::sinr);

  py::class_<fdnet::RelayPowerResult>(m, "RelayPowerResult")
      .def_readonly("p_r", &fdnet::RelayPowerResult::p_r)
      .def_readonly("sinr", &fdnet::RelayPowerResult::sinr);

  py::class_<fdnet::ModeDecision>(m, "ModeDecision")
      .def_readonly("full_duplex", &fdnet::ModeDecision::full_duplex)
      .def_readonly("fd_rate", &fdnet::ModeDecision::fd_rate)
      .def_readonly("hd_rate", &fdnet::ModeDecision::hd_rate);

  m.def("end_to_end_sinr", &fdnet::end_to_end_sinr, py::arg("scenario"),
        py::arg("relay"), py::arg("config"), py::arg("p_r"),
        py::arg("protocol"));
  m.def("select_relay_antenna", &fdnet::select_relay_antenna,
        py::arg("scenario"), py::arg("p_r"), py::arg("protocol"));
  m.def("optimal_relay_power", &fdnet::optimal_relay_power, py::arg("scenario"),
        py::arg("relay"), py::arg("config"), py::arg("protocol"),
        py::arg("tol") = 1e-6);
  m.def("mode_switch", &fdnet::mode_switch, py::arg("sinr_fd_a"),
        py::arg("sinr_fd_b"), py::arg("sinr_hd_a"), py::arg("sinr_hd_b"));

  // Water-filling power allocation.
  py::class_<fdnet::ParallelChannels>(m, "ParallelChannels")
      .def(py::init<>())
      .def_readwrite("eff_gain", &fdnet::ParallelChannels::eff_gain)
      .def_readwrite("p_total", &fdnet::ParallelChannels::p_total);

  py::class_<fdnet::Allocation>(m, "Allocation")
      .def_readonly("power", &fdnet::Allocation::power)
      .def_readonly("water_level", &fdnet::Allocation::water_level)
      .def_readonly("degenerate", &fdnet::Allocation::degenerate);

  m.def("waterfill", &fdnet::waterfill, py::arg("channels"));

  // Experiment harness and configs.
  py::class_<fdnet::ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("kind", &fdnet::ExperimentConfig::kind)
      .def_readwrite("trials", &fdnet::ExperimentConfig::trials)
      .def_readwrite("base_seed", &fdnet::ExperimentConfig::base_seed)
      .def_readwrite("sweep_name", &fdnet::ExperimentConfig::sweep_name)
      .def_readwrite("sweep_values", &fdnet::ExperimentConfig::sweep_values)
      .def_readwrite("noise_w", &fdnet::ExperimentConfig::noise_w)
      .def_readwrite("cancellation_db", &fdnet::ExperimentConfig::cancellation_db)
      .def_readwrite("rsi_model", &fdnet::ExperimentConfig::rsi_model)
      .def_readwrite("rician_k", &fdnet::ExperimentConfig::rician_k)
      .def_readwrite("antennas", &fdnet::ExperimentConfig::antennas)
      .def_readwrite("node_power_w", &fdnet::ExperimentConfig::node_power_w)
      .def_readwrite("modulation", &fdnet::ExperimentConfig::modulation)
      .def_readwrite("tx_users", &fdnet::ExperimentConfig::tx_users)
      .def_readwrite("subcarriers", &fdnet::ExperimentConfig::subcarriers)
      .def_readwrite("price_step", &fdnet::ExperimentConfig::price_step)
      .def_readwrite("split_rule", &fdnet::ExperimentConfig::split_rule)
      .def_readwrite("p_user_w", &fdnet::ExperimentConfig::p_user_w)
      .def_readwrite("p_bs_total_w", &fdnet::ExperimentConfig::p_bs_total_w)
      .def_readwrite("cross_gain_mean", &fdnet::ExperimentConfig::cross_gain_mean)
      .def_readwrite("run_centralized", &fdnet::ExperimentConfig::run_centralized)
      .def_readwrite("relays", &fdnet::ExperimentConfig::relays)
      .def_readwrite("configs_per_relay", &fdnet::ExperimentConfig::configs_per_relay)
      .def_readwrite("p_s_w", &fdnet::ExperimentConfig::p_s_w)
      .def_readwrite("p_r_max_w", &fdnet::ExperimentConfig::p_r_max_w)
      .def_readwrite("protocol", &fdnet::ExperimentConfig::protocol)
      .def_readwrite("optimize_relay_power",
                     &fdnet::ExperimentConfig::optimize_relay_power)
      .def_readwrite("mode_power_w", &fdnet::ExperimentConfig::mode_power_w)
      .def_readwrite("mode_fading", &fdnet::ExperimentConfig::mode_fading)
      .def_readwrite("channels", &fdnet::ExperimentConfig::channels)
      .def_readwrite("p_total_w", &fdnet::ExperimentConfig::p_total_w);

  py::class_<fdnet::ResultRecord>(m, "ResultRecord")
      .def_readonly("sweep_param", &fdnet::ResultRecord::sweep_param)
      .def_readonly("sweep_value", &fdnet::ResultRecord::sweep_value)
      .def_readonly("metric", &fdnet::ResultRecord::metric)
      .def_readonly("mean", &fdnet::ResultRecord::mean)
      .def_readonly("std_error", &fdnet::ResultRecord::std_error)
      .def_readonly("trials", &fdnet::ResultRecord::trials);

  m.def("generate_mimo_scenario", &fdnet::generate_mimo_scenario,
        py::arg("config"), py::arg("antennas"), py::arg("rng"));
  m.def("generate_ofdma_scenario", &fdnet::generate_ofdma_scenario,
        py::arg("config"), py::arg("tx_users"), py::arg("subcarriers"),
        py::arg("p_user_w"), py::arg("rng"));
  m.def("generate_relay_scenario", &fdnet::generate_relay_scenario,
        py::arg("config"), py::arg("relays"), py::arg("rng"));
  m.def("generate_parallel_channels", &fdnet::generate_parallel_channels,
        py::arg("config"), py::arg("channels"), py::arg("p_total_w"),
        py::arg("rng"));
  m.def("run_experiment", &fdnet::run_experiment, py::arg("config"),
        py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("resolve_threads", &fdnet::resolve_threads, py::arg("requested") = 0);
  m.def("sweepable_params", &fdnet::sweepable_params, py::arg("kind"));

  m.def("parse_config", &fdnet::parse_config, py::arg("text"));
  m.def("serialize_config", &fdnet::serialize_config, py::arg("config"));
  m.def("validate_config", &fdnet::validate_config, py::arg("config"));
  m.def("emit_csv", &fdnet::emit_csv, py::arg("records"));

  py::register_exception<fdnet::ConfigError>(m, "ConfigError");
}
