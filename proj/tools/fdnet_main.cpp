#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fdnet/config.hpp"
#include "fdnet/csv.hpp"
#include "fdnet/harness.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void list_experiments(std::ostream& out) {
  static const std::pair<const char*, fdnet::ExperimentKind> kinds[] = {
      {"mimo_selection", fdnet::ExperimentKind::MimoSelection},
      {"ofdma_matching", fdnet::ExperimentKind::OfdmaMatching},
      {"relay_selection", fdnet::ExperimentKind::RelaySelection},
      {"mode_switch", fdnet::ExperimentKind::ModeSwitch},
      {"power_sweep", fdnet::ExperimentKind::PowerSweep},
  };
  for (const auto& [name, kind] : kinds) {
    out << name << "\n  sweepable:";
    for (const auto& p : fdnet::sweepable_params(kind)) out << " " << p;
    out << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdnet: resource allocation simulator for full-duplex wireless networks"};
  app.require_subcommand(1);

  std::string run_config, out_dir, validate_config_path;
  std::uint64_t seed = 0, trials = 0;

  CLI::App* run = app.add_subcommand("run", "Run an experiment and emit CSV results");
  run->add_option("--config", run_config, "Experiment config file")->required();
  run->add_option("--out", out_dir,
                  "Directory for results.csv (default: CSV to stdout)");
  run->add_option("--seed", seed, "Override the config's base_seed");
  run->add_option("--trials", trials, "Override the config's trial count")
      ->check(CLI::PositiveNumber);

  CLI::App* validate =
      app.add_subcommand("validate", "Check a config file and print OK");
  validate->add_option("--config", validate_config_path, "Experiment config file")
      ->required();

  app.add_subcommand("list-experiments",
                     "List experiment kinds and their sweepable parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      fdnet::ExperimentConfig cfg = fdnet::parse_config(read_file(run_config));
      if (run->count("--seed")) cfg.base_seed = seed;
      if (run->count("--trials")) cfg.trials = trials;
      fdnet::validate_config(cfg);
      const std::string csv = fdnet::emit_csv(fdnet::run_experiment(cfg));
      if (out_dir.empty()) {
        std::cout << csv;
      } else {
        std::filesystem::create_directories(out_dir);
        const auto path = std::filesystem::path(out_dir) / "results.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << csv;
        out.close();
        if (!out) throw std::runtime_error("failed writing " + path.string());
        std::cout << path.string() << "\n";
      }
    } else if (validate->parsed()) {
      fdnet::parse_config(read_file(validate_config_path));
      std::cout << "OK\n";
    } else {
      list_experiments(std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
