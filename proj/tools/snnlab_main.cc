// snnlab <train|evaluate-noise|coherence-table|spectrum|report> --config <path>
//        [--out <dir>] [--seed <n>...] [--threads <n>] [--quiet]

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "snnlab/config.h"
#include "snnlab/error.h"
#include "snnlab/experiment.h"

int main(int argc, char** argv) {
  CLI::App app{"Spiking network training, noise robustness and coherence analysis"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::uint64_t> seeds;
  int threads = -1;
  bool quiet = false;

  const char* descriptions[][2] = {
      {"train", "train one network per (tau_m, seed) and save checkpoints"},
      {"evaluate-noise", "accuracy under every configured noise kind, scenario and severity"},
      {"coherence-table", "analytic and Monte Carlo coherence curves"},
      {"spectrum", "input spectra and target-neuron critical frequency histograms"},
      {"report", "accuracy, SSE, spiking activity and synaptic operations per model"},
  };
  for (const auto& [name, help] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_dir,
                    std::string("output directory (default: $") + snnlab::kOutputDirEnv +
                        " or " + snnlab::kDefaultOutputDir + ")");
    sub->add_option("--seed", seeds, "override the config's seed list");
    sub->add_option("--threads", threads, "worker threads, 0 for all cores")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--quiet", quiet, "suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? snnlab::kExitOk : snnlab::kExitUsage;
  }

  try {
    const snnlab::Command command = snnlab::ParseCommand(app.get_subcommands().front()->get_name());
    snnlab::ExperimentConfig config = snnlab::ExperimentConfig::Load(config_path);
    if (!seeds.empty()) config.seeds = seeds;
    if (threads >= 0) config.threads = threads;
    config.Validate();
    const std::string dir = snnlab::ResolveOutputDir(out_dir, config);
    const auto written = snnlab::RunCommand(command, config, dir, quiet ? nullptr : &std::cerr);
    for (const auto& path : written) std::cout << path << "\n";
    return snnlab::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "snnlab: " << e.what() << "\n";
    return snnlab::ExitCodeFor(e);
  }
}
