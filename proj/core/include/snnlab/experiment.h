#ifndef SNNLAB_EXPERIMENT_H_
#define SNNLAB_EXPERIMENT_H_

#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "snnlab/config.h"
#include "snnlab/dataset.h"
#include "snnlab/network.h"
#include "snnlab/training.h"

namespace snnlab {

enum class Command { kTrain, kEvaluateNoise, kCoherenceTable, kSpectrum, kReport };

Command ParseCommand(const std::string& text);
std::string ToString(Command command);

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SNNLAB_OUT_DIR";
inline constexpr const char* kDefaultOutputDir = "snnlab-out";

// Command-line value, then the config's output_dir, then $SNNLAB_OUT_DIR,
// then "snnlab-out".
std::string ResolveOutputDir(const std::string& from_cli, const ExperimentConfig& config);

struct DataSplit {
  Dataset train;
  Dataset test;
};
DataSplit LoadData(const ExperimentConfig& config);

struct TrainedModel {
  double tau_m = 0.0;
  std::uint64_t seed = 0;
  Network net;
  std::vector<EpochRecord> history;
};

// One network per (tau_m, seed), in config order. A checkpoint under
// <dir>/checkpoints whose name carries the config's model fingerprint is
// loaded instead of retraining; otherwise the model is trained and saved.
// Training is deterministic, so both routes give identical weights.
std::vector<TrainedModel> ObtainModels(const ExperimentConfig& config, const DataSplit& data,
                                       const std::string& dir, std::ostream* log);

// Runs one subcommand and writes its files under `output_dir`.
//   train            checkpoints/, train_log.csv, config.ini
//   evaluate-noise   noise_sweep.csv, noise_summary.csv
//   coherence-table  coherence_analytic.csv, coherence_table.csv
//   spectrum         input_spectrum.csv, critical_freq_hist.csv, critical_freq_summary.csv
//   report           report.csv, sse_curve.csv, report.txt
// Returns the paths written.
std::vector<std::string> RunCommand(Command command, const ExperimentConfig& config,
                                    const std::string& output_dir, std::ostream* log = nullptr);

// Process exit status for an exception escaping RunCommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitUsage = 2,
  kExitConfig = 3,
  kExitDivergence = 4,
  kExitIo = 5,
  kExitFormat = 6,
  kExitNumerical = 7,
  kExitInvalid = 8,
};
int ExitCodeFor(const std::exception& error);

}  // namespace snnlab

#endif  // SNNLAB_EXPERIMENT_H_
