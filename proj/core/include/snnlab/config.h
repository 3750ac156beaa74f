#ifndef SNNLAB_CONFIG_H_
#define SNNLAB_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "snnlab/coherence.h"
#include "snnlab/dataset.h"
#include "snnlab/encoding.h"
#include "snnlab/neuron.h"
#include "snnlab/training.h"

namespace snnlab {

// Raw "key = value" text grouped under "[section]" headers. Lines starting
// with '#' or ';' are comments. Keys before the first header belong to the
// section "". Duplicate keys within a section are an error.
struct ConfigFile {
  std::map<std::string, std::map<std::string, std::string>> sections;

  static ConfigFile Parse(std::string_view text);
  bool Has(const std::string& section, const std::string& key) const;
};

struct DataConfig {
  std::string source = "synthetic";  // synthetic | idx
  SynthKind synth_kind = SynthKind::kBars;
  int train_size = 256;
  int test_size = 256;
  SynthOptions synth;
  std::uint64_t data_seed = 11;  // train set; the test set uses data_seed + 1
  // IDX files, resolved relative to the config file's directory.
  std::string train_images, train_labels, test_images, test_labels;
  int train_limit = 0;  // 0 keeps every sample
  int test_limit = 0;

  bool operator==(const DataConfig&) const = default;
};

struct EvalConfig {
  std::vector<std::uint64_t> encode_seeds = {1000};
  std::vector<NoiseKind> kinds = {NoiseKind::kGaussian, NoiseKind::kImpulse};
  std::vector<int> severities = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<NoiseScenario> scenarios = {NoiseScenario::kPixelNoise,
                                          NoiseScenario::kSpikeNoise};
  NoiseScales scales;
  double critical_fraction = 0.7;
  bool detrend_target_signal = false;
  // Noisy condition of the spectrum and report subcommands.
  NoiseKind spectrum_kind = NoiseKind::kGaussian;
  int spectrum_severity = 5;
  NoiseScenario spectrum_scenario = NoiseScenario::kPixelNoise;
  int histogram_bins = 20;

  bool operator==(const EvalConfig&) const = default;
};

struct CoherenceConfig {
  std::vector<double> mu = {0.8};
  std::vector<double> D = {0.1};  // paired with mu
  double tau_r = 0.0;
  double v_th = 1.0;
  double u_rest = 0.0;
  double omega_min = 0.1;
  double omega_max = 5.0;
  int analytic_points = 60;
  double mc_duration = 20000.0;
  double mc_dt = 1e-3;
  double mc_bin = 0.01;
  double mc_segment = 100.0;
  bool mc_bridge = true;
  bool include_if = true;  // Monte Carlo curve with the leak removed

  std::vector<CoherenceParams> Cases() const;
  bool operator==(const CoherenceConfig&) const = default;
};

struct ExperimentConfig {
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  std::string output_dir;  // empty: command line or environment decides
  int threads = 0;

  std::string architecture = "16x16-8C3-2P-64FC-2o";
  std::vector<double> tau_m = {kInfiniteTau, 30.0, 100.0};  // one model per value
  NeuronConfig neuron;  // tau_m is replaced per model

  TrainConfig train;  // seed and threads are replaced per run
  DataConfig data;
  EvalConfig eval;
  CoherenceConfig coherence;

  // Directory the config file was read from; IDX paths resolve against it.
  std::string base_dir = ".";

  void Validate() const;
  NeuronConfig NeuronFor(double tau) const;
  TrainConfig TrainFor(std::uint64_t seed) const;

  // Canonical text form. Parse(Serialize(c)) == c up to base_dir.
  std::string Serialize() const;
  static ExperimentConfig Parse(std::string_view text, const std::string& base_dir = ".");
  static ExperimentConfig Load(const std::string& path);

  // Stable 64-bit fingerprint of everything that determines a trained
  // network (architecture, neuron, training, data).
  std::uint64_t ModelFingerprint() const;

  bool operator==(const ExperimentConfig& other) const;
};

// "if" for an infinite time constant, otherwise "lif" plus the value.
std::string ModelTag(double tau_m);

}  // namespace snnlab

#endif  // SNNLAB_CONFIG_H_
