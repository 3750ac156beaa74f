#include "snnlab/experiment.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "snnlab/analysis.h"
#include "snnlab/architecture.h"
#include "snnlab/checkpoint.h"
#include "snnlab/coherence.h"
#include "snnlab/csv.h"
#include "snnlab/error.h"
#include "snnlab/idx.h"
#include "snnlab/lif_sde.h"

namespace snnlab {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kInputSpectrumStream = 0x59ec;
constexpr std::uint64_t kSdeStream = 0xc0e;

void Log(std::ostream* log, const std::string& line) {
  if (log != nullptr) *log << line << std::endl;
}

std::string Hex(std::uint64_t v) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(v));
  return buffer;
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::string Join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string Resolve(const std::string& base, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).string();
}

Dataset Truncate(Dataset ds, int limit) {
  if (limit > 0 && static_cast<std::size_t>(limit) < ds.size()) {
    ds.labels.resize(limit);
    ds.images.resize(static_cast<std::size_t>(limit) * ds.image_size());
  }
  return ds;
}

NoiseSpec MakeNoise(const ExperimentConfig& config, NoiseKind kind, int severity,
                    NoiseScenario scenario) {
  NoiseSpec spec = NoiseSpec::Make(kind, severity, scenario);
  spec.scales = config.eval.scales;
  return spec;
}

EvalOptions MakeEvalOptions(const ExperimentConfig& config) {
  EvalOptions opts;
  opts.threads = config.threads;
  opts.critical_fraction = config.eval.critical_fraction;
  opts.detrend_target_signal = config.eval.detrend_target_signal;
  return opts;
}

const std::vector<std::string> kHistoryHeader = {
    "epoch",     "learning_rate",  "mean_loss",       "train_accuracy",
    "test_accuracy", "sse_train",  "sse_test",        "spike_activity",
    "synaptic_ops_per_sample", "critical_freq"};

void WriteHistory(const std::string& path, const std::vector<EpochRecord>& history) {
  CsvWriter csv(path, kHistoryHeader);
  for (const auto& r : history) {
    (csv.NewRow() << r.epoch << r.learning_rate << r.mean_loss << r.train_accuracy
                 << r.metrics.accuracy << r.metrics.sse_train << r.metrics.sse_test
                 << r.metrics.spike_activity << r.metrics.synaptic_ops_per_sample
                 << r.metrics.critical_freq).End();
  }
  csv.Close();
}

std::vector<EpochRecord> ReadHistory(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  const auto rows = ParseCsv(std::string(bytes.begin(), bytes.end()));
  if (rows.empty() || rows.front() != kHistoryHeader) {
    throw FormatError(path + ": unexpected training history header");
  }
  std::vector<EpochRecord> history;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != kHistoryHeader.size()) throw FormatError(path + ": short row");
    EpochRecord r;
    r.epoch = std::stoi(f[0]);
    r.learning_rate = std::stod(f[1]);
    r.mean_loss = std::stod(f[2]);
    r.train_accuracy = std::stod(f[3]);
    r.metrics.accuracy = std::stod(f[4]);
    r.metrics.sse_train = std::stod(f[5]);
    r.metrics.sse_test = std::stod(f[6]);
    r.metrics.spike_activity = std::stod(f[7]);
    r.metrics.synaptic_ops_per_sample = std::stod(f[8]);
    r.metrics.critical_freq = std::stod(f[9]);
    history.push_back(r);
  }
  return history;
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<std::string> CmdTrain(const ExperimentConfig& config, const std::string& out,
                                  std::ostream* log) {
  const DataSplit data = LoadData(config);
  const auto models = ObtainModels(config, data, out, log);
  std::vector<std::string> written;

  const std::string log_path = Join(out, "train_log.csv");
  std::vector<std::string> header = {"model", "tau_m", "seed"};
  header.insert(header.end(), kHistoryHeader.begin(), kHistoryHeader.end());
  CsvWriter csv(log_path, header);
  for (const auto& m : models) {
    for (const auto& r : m.history) {
      (csv.NewRow() << ModelTag(m.tau_m) << FormatDouble(m.tau_m) << m.seed << r.epoch
                   << r.learning_rate << r.mean_loss << r.train_accuracy << r.metrics.accuracy
                   << r.metrics.sse_train << r.metrics.sse_test << r.metrics.spike_activity
                   << r.metrics.synaptic_ops_per_sample << r.metrics.critical_freq).End();
    }
  }
  csv.Close();
  written.push_back(log_path);

  const std::string config_path = Join(out, "config.ini");
  std::ofstream cfg(config_path, std::ios::binary | std::ios::trunc);
  cfg << config.Serialize();
  cfg.close();
  if (!cfg) throw IoError("write failed: " + config_path);
  written.push_back(config_path);
  return written;
}

std::vector<std::string> CmdEvaluateNoise(const ExperimentConfig& config, const std::string& out,
                                          std::ostream* log) {
  const DataSplit data = LoadData(config);
  const auto models = ObtainModels(config, data, out, log);
  const EvalOptions opts = MakeEvalOptions(config);
  const int steps = config.train.steps;

  const std::string sweep_path = Join(out, "noise_sweep.csv");
  const std::string summary_path = Join(out, "noise_summary.csv");
  CsvWriter sweep(sweep_path, {"model", "tau_m", "seed", "kind", "scenario", "severity",
                               "accuracy", "sse", "spike_activity"});
  CsvWriter summary(summary_path, {"model", "tau_m", "kind", "scenario", "severity",
                                   "mean_accuracy", "mean_drop"});

  const std::size_t nseeds = config.seeds.size();
  for (std::size_t mi = 0; mi < models.size(); mi += nseeds) {
    const double tau = models[mi].tau_m;
    // Clean accuracy once per network; severity 0 rows reuse it.
    std::vector<RunMetrics> clean(nseeds);
    for (std::size_t s = 0; s < nseeds; ++s) {
      clean[s] = Evaluate(models[mi + s].net, data.test, NoiseSpec::Clean(), steps,
                          config.eval.encode_seeds, opts);
    }
    for (NoiseKind kind : config.eval.kinds) {
      for (NoiseScenario scenario : config.eval.scenarios) {
        for (int severity : config.eval.severities) {
          Log(log, "evaluate " + ModelTag(tau) + " " + ToString(kind) + " scenario " +
                       ToString(scenario) + " severity " + std::to_string(severity));
          std::vector<double> acc(nseeds), drop(nseeds);
          for (std::size_t s = 0; s < nseeds; ++s) {
            const RunMetrics m =
                severity == 0 ? clean[s]
                              : Evaluate(models[mi + s].net, data.test,
                                         MakeNoise(config, kind, severity, scenario), steps,
                                         config.eval.encode_seeds, opts);
            acc[s] = m.accuracy;
            drop[s] = clean[s].accuracy - m.accuracy;
            (sweep.NewRow() << ModelTag(tau) << FormatDouble(tau) << models[mi + s].seed
                           << ToString(kind) << ToString(scenario) << severity << m.accuracy
                           << m.sse_test << m.spike_activity).End();
          }
          (summary.NewRow() << ModelTag(tau) << FormatDouble(tau) << ToString(kind)
                           << ToString(scenario) << severity << Mean(acc) << Mean(drop)).End();
        }
      }
    }
  }
  sweep.Close();
  summary.Close();
  return {sweep_path, summary_path};
}

std::vector<std::string> CmdCoherenceTable(const ExperimentConfig& config,
                                           const std::string& out, std::ostream* log) {
  const CoherenceConfig& cc = config.coherence;
  const auto cases = cc.Cases();
  const std::string analytic_path = Join(out, "coherence_analytic.csv");
  const std::string table_path = Join(out, "coherence_table.csv");
  CsvWriter analytic(analytic_path, {"case", "mu", "D", "omega", "coherence", "power",
                                     "cross_re", "cross_im", "firing_rate"});
  CsvWriter table(table_path, {"case", "model", "mu", "D", "omega", "C_analytic",
                               "C_montecarlo", "S_xx_analytic", "S_xx_montecarlo",
                               "abs_S_xs_analytic", "abs_S_xs_montecarlo"});
  const auto grid = LogGrid(cc.omega_min, cc.omega_max, cc.analytic_points);
  const std::uint64_t seed = config.seeds.front();

  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const CoherenceParams& p = cases[ci];
    Log(log, "coherence case " + std::to_string(ci) + ": analytic curve");
    const double r0 = FiringRate(p);
    const CoherenceCurves curves = EvaluateCoherenceCurves(grid, p, config.threads);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      (analytic.NewRow() << static_cast<int>(ci) << p.mu << p.D << curves.omega[i]
                        << curves.coherence[i] << curves.power[i] << curves.cross[i].real()
                        << curves.cross[i].imag() << r0).End();
    }

    for (bool leak : {true, false}) {
      if (!leak && !(cc.include_if && ci == 0)) continue;
      Log(log, std::string("coherence case ") + std::to_string(ci) + ": Monte Carlo " +
                   (leak ? "lif" : "if"));
      SdeOptions opts;
      opts.leak = leak;
      opts.bridge_correction = cc.mc_bridge;
      opts.record_bin = cc.mc_bin;
      opts.initial_v = p.u_rest;
      Rng rng = MakeStream(seed, kSdeStream, ci * 2 + (leak ? 0 : 1));
      const SdeTrajectory traj = SimulateLifSde(p, cc.mc_dt, cc.mc_duration, rng, opts);
      const SpectralEstimate est = EstimateCoherenceMc(traj, cc.mc_segment);
      std::vector<std::size_t> keep;
      for (std::size_t k = 0; k < est.omega.size(); ++k) {
        if (est.omega[k] >= cc.omega_min && est.omega[k] <= cc.omega_max) keep.push_back(k);
      }
      std::vector<double> omegas;
      for (std::size_t k : keep) omegas.push_back(est.omega[k]);
      CoherenceCurves exact;
      if (leak && !omegas.empty()) exact = EvaluateCoherenceCurves(omegas, p, config.threads);
      for (std::size_t j = 0; j < keep.size(); ++j) {
        const std::size_t k = keep[j];
        auto row = table.NewRow();
        row << static_cast<int>(ci) << (leak ? "lif" : "if") << p.mu << p.D << est.omega[k];
        if (leak) {
          row << exact.coherence[j];
        } else {
          row << "";
        }
        row << est.coherence[k];
        if (leak) {
          row << exact.power[j];
        } else {
          row << "";
        }
        row << est.power_x[k];
        if (leak) {
          row << std::abs(exact.cross[j]);
        } else {
          row << "";
        }
        row << std::abs(est.cross[k]);
        row.End();
      }
    }
  }
  analytic.Close();
  table.Close();
  return {analytic_path, table_path};
}

std::vector<std::string> CmdSpectrum(const ExperimentConfig& config, const std::string& out,
                                     std::ostream* log) {
  const DataSplit data = LoadData(config);
  const auto models = ObtainModels(config, data, out, log);
  const EvalOptions opts = MakeEvalOptions(config);
  const int steps = config.train.steps;
  const NoiseSpec noisy = MakeNoise(config, config.eval.spectrum_kind,
                                    config.eval.spectrum_severity, config.eval.spectrum_scenario);
  const std::vector<std::string> written = {Join(out, "input_spectrum.csv"),
                                            Join(out, "critical_freq_hist.csv"),
                                            Join(out, "critical_freq_summary.csv")};

  // Mean input spike-train spectrum over the test set, clean and noisy.
  {
    CsvWriter csv(written[0], {"condition", "frequency", "amplitude"});
    const std::uint64_t seed = config.eval.encode_seeds.front();
    for (const NoiseSpec& spec : {NoiseSpec::Clean(), noisy}) {
      std::vector<SpectrumCurve> curves;
      for (std::size_t i = 0; i < data.test.size(); ++i) {
        Rng rng = MakeStream(seed, kInputSpectrumStream, i);
        const auto pixels = Normalize(data.test.ChannelsFirst(i));
        curves.push_back(SpikeSpectrum(EncodeNoisy(pixels, steps, spec, rng)));
      }
      const SpectrumCurve mean = AverageSpectra(curves);
      const std::string cond = spec.is_clean() ? "clean" : "noisy";
      for (std::size_t k = 0; k < mean.size(); ++k) {
        (csv.NewRow() << cond << mean.frequencies[k] << mean.values[k]).End();
      }
    }
    csv.Close();
  }

  CsvWriter hist(written[1], {"model", "tau_m", "condition", "bin_lo", "bin_hi", "count"});
  CsvWriter summary(written[2],
                    {"model", "tau_m", "seed", "condition", "mean_critical_freq", "samples"});
  const std::size_t nseeds = config.seeds.size();
  const int bins = config.eval.histogram_bins;
  for (std::size_t mi = 0; mi < models.size(); mi += nseeds) {
    const double tau = models[mi].tau_m;
    for (const NoiseSpec& spec : {NoiseSpec::Clean(), noisy}) {
      const std::string cond = spec.is_clean() ? "clean" : "noisy";
      Log(log, "spectrum " + ModelTag(tau) + " " + cond);
      std::vector<std::uint64_t> counts(bins, 0);
      for (std::size_t s = 0; s < nseeds; ++s) {
        const RunMetrics m = Evaluate(models[mi + s].net, data.test, spec, steps,
                                      config.eval.encode_seeds, opts);
        (summary.NewRow() << ModelTag(tau) << FormatDouble(tau) << models[mi + s].seed << cond
                         << m.critical_freq << m.critical_freqs.size()).End();
        for (double f : m.critical_freqs) {
          int b = static_cast<int>(f / 0.5 * bins);
          counts[std::clamp(b, 0, bins - 1)]++;
        }
      }
      for (int b = 0; b < bins; ++b) {
        (hist.NewRow() << ModelTag(tau) << FormatDouble(tau) << cond << 0.5 * b / bins
                      << 0.5 * (b + 1) / bins << counts[b]).End();
      }
    }
  }
  hist.Close();
  summary.Close();
  return written;
}

std::vector<std::string> CmdReport(const ExperimentConfig& config, const std::string& out,
                                   std::ostream* log) {
  const DataSplit data = LoadData(config);
  const auto models = ObtainModels(config, data, out, log);
  const EvalOptions opts = MakeEvalOptions(config);
  const int steps = config.train.steps;
  const NoiseSpec noisy = MakeNoise(config, config.eval.spectrum_kind,
                                    config.eval.spectrum_severity, config.eval.spectrum_scenario);
  const std::string report_path = Join(out, "report.csv");
  const std::string curve_path = Join(out, "sse_curve.csv");
  const std::string text_path = Join(out, "report.txt");

  CsvWriter report(report_path,
                   {"model", "tau_m", "seed", "accuracy", "sse_test", "sse_train", "spikes_pct",
                    "synaptic_ops", "synaptic_ops_per_sample", "enwsi_mean", "critical_freq",
                    "critical_freq_noisy"});
  CsvWriter curve(curve_path, {"model", "tau_m", "seed", "epoch", "sse_train", "sse_test"});
  std::ostringstream text;
  text << "architecture: " << config.architecture << "\n"
       << "time steps: " << steps << "\n"
       << "test samples: " << data.test.size() << "\n"
       << "noisy condition: " << ToString(noisy.kind) << " severity " << noisy.severity
       << " scenario " << ToString(noisy.scenario) << "\n\n";
  text << std::left << std::setw(10) << "model" << std::setw(12) << "accuracy" << std::setw(12)
       << "sse_test" << std::setw(12) << "sse_train" << std::setw(12) << "spikes(%)"
       << std::setw(16) << "syn_ops" << std::setw(12) << "crit_freq" << "crit_freq_noisy\n";

  const std::size_t nseeds = config.seeds.size();
  for (std::size_t mi = 0; mi < models.size(); mi += nseeds) {
    const double tau = models[mi].tau_m;
    Log(log, "report " + ModelTag(tau));
    std::vector<double> cols[9];
    for (std::size_t s = 0; s < nseeds; ++s) {
      const TrainedModel& m = models[mi + s];
      const RunMetrics clean =
          Evaluate(m.net, data.test, NoiseSpec::Clean(), steps, config.eval.encode_seeds, opts);
      const RunMetrics noise =
          Evaluate(m.net, data.test, noisy, steps, config.eval.encode_seeds, opts);
      const double sse_train = m.history.empty() ? 0.0 : m.history.back().metrics.sse_train;
      const double values[9] = {clean.accuracy,
                                clean.sse_test,
                                sse_train,
                                100.0 * clean.spike_activity,
                                static_cast<double>(clean.synaptic_ops),
                                clean.synaptic_ops_per_sample,
                                Mean(clean.enwsi),
                                clean.critical_freq,
                                noise.critical_freq};
      auto row = report.NewRow();
      row << ModelTag(tau) << FormatDouble(tau) << std::to_string(m.seed);
      for (int c = 0; c < 9; ++c) {
        if (c == 4) {
          row << clean.synaptic_ops;
        } else {
          row << values[c];
        }
        cols[c].push_back(values[c]);
      }
      row.End();
      for (const auto& r : m.history) {
        (curve.NewRow() << ModelTag(tau) << FormatDouble(tau) << m.seed << r.epoch
                       << r.metrics.sse_train << r.metrics.sse_test).End();
      }
    }
    auto row = report.NewRow();
    row << ModelTag(tau) << FormatDouble(tau) << "mean";
    for (int c = 0; c < 9; ++c) row << Mean(cols[c]);
    row.End();

    std::ostringstream ops;
    ops << std::scientific << std::setprecision(3) << Mean(cols[4]);
    text << std::left << std::setw(10) << ModelTag(tau) << std::fixed << std::setprecision(4)
         << std::setw(12) << Mean(cols[0]) << std::setw(12) << Mean(cols[1]) << std::setw(12)
         << Mean(cols[2]) << std::setw(12) << Mean(cols[3]) << std::setw(16) << ops.str()
         << std::setw(12) << Mean(cols[7]) << Mean(cols[8]) << "\n";
    text.unsetf(std::ios::fixed);
  }
  report.Close();
  curve.Close();
  std::ofstream txt(text_path, std::ios::binary | std::ios::trunc);
  txt << text.str();
  txt.close();
  if (!txt) throw IoError("write failed: " + text_path);
  return {report_path, curve_path, text_path};
}

}  // namespace

Command ParseCommand(const std::string& text) {
  if (text == "train") return Command::kTrain;
  if (text == "evaluate-noise") return Command::kEvaluateNoise;
  if (text == "coherence-table") return Command::kCoherenceTable;
  if (text == "spectrum") return Command::kSpectrum;
  if (text == "report") return Command::kReport;
  throw InvalidArgument("unknown command '" + text + "'");
}

std::string ToString(Command command) {
  switch (command) {
    case Command::kTrain: return "train";
    case Command::kEvaluateNoise: return "evaluate-noise";
    case Command::kCoherenceTable: return "coherence-table";
    case Command::kSpectrum: return "spectrum";
    case Command::kReport: return "report";
  }
  return "";
}

std::string ResolveOutputDir(const std::string& from_cli, const ExperimentConfig& config) {
  if (!from_cli.empty()) return from_cli;
  if (!config.output_dir.empty()) return Resolve(config.base_dir, config.output_dir);
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return kDefaultOutputDir;
}

DataSplit LoadData(const ExperimentConfig& config) {
  const DataConfig& d = config.data;
  DataSplit split;
  if (d.source == "synthetic") {
    split.train = SynthDataset(d.synth_kind, d.train_size, d.data_seed, d.synth);
    split.test = SynthDataset(d.synth_kind, d.test_size, d.data_seed + 1, d.synth);
  } else {
    split.train = LoadIdxDataset(Resolve(config.base_dir, d.train_images),
                                 Resolve(config.base_dir, d.train_labels));
    split.test = LoadIdxDataset(Resolve(config.base_dir, d.test_images),
                                Resolve(config.base_dir, d.test_labels));
    const int classes = std::max(split.train.num_classes, split.test.num_classes);
    split.train.num_classes = classes;
    split.test.num_classes = classes;
  }
  split.train = Truncate(std::move(split.train), d.train_limit);
  split.test = Truncate(std::move(split.test), d.test_limit);
  split.train.split = "train";
  split.test.split = "test";
  const Architecture arch = ParseArchitecture(config.architecture);
  if (arch.input.height != split.train.height || arch.input.width != split.train.width ||
      arch.input.channels != split.train.channels) {
    throw ConfigError("architecture input " + arch.input.ToString() +
                      " does not match the dataset images");
  }
  if (arch.num_classes() < split.train.num_classes) {
    throw ConfigError("architecture has fewer outputs than the dataset has classes");
  }
  return split;
}

std::vector<TrainedModel> ObtainModels(const ExperimentConfig& config, const DataSplit& data,
                                       const std::string& dir, std::ostream* log) {
  const std::string ckpt_dir = Join(dir, "checkpoints");
  EnsureDir(ckpt_dir);
  const std::string fp = Hex(config.ModelFingerprint());
  const Architecture arch = ParseArchitecture(config.architecture);
  std::vector<TrainedModel> models;
  for (double tau : config.tau_m) {
    for (std::uint64_t seed : config.seeds) {
      const std::string stem =
          Join(ckpt_dir, ModelTag(tau) + "-seed" + std::to_string(seed) + "-" + fp);
      TrainedModel m;
      m.tau_m = tau;
      m.seed = seed;
      const NeuronConfig neuron = config.NeuronFor(tau);
      if (fs::exists(stem + ".ckpt") && fs::exists(stem + ".history.csv")) {
        m.net = LoadCheckpoint(stem + ".ckpt");
        if (!(m.net.neuron() == neuron) || !(m.net.architecture() == arch)) {
          throw FormatError(stem + ".ckpt does not match the configured model");
        }
        m.history = ReadHistory(stem + ".history.csv");
        Log(log, "loaded " + stem + ".ckpt");
      } else {
        Log(log, "training " + ModelTag(tau) + " seed " + std::to_string(seed));
        m.net = BuildNetwork(arch, neuron, seed);
        m.history = Train(m.net, data.train, &data.test, config.TrainFor(seed),
                          [&](const EpochRecord& r, const Network&) {
                            std::ostringstream line;
                            line << "  epoch " << r.epoch << " loss " << r.mean_loss
                                 << " train acc " << r.train_accuracy << " test acc "
                                 << r.metrics.accuracy;
                            Log(log, line.str());
                          });
        SaveCheckpoint(stem + ".ckpt", m.net);
        WriteHistory(stem + ".history.csv", m.history);
      }
      models.push_back(std::move(m));
    }
  }
  return models;
}

std::vector<std::string> RunCommand(Command command, const ExperimentConfig& config,
                                    const std::string& output_dir, std::ostream* log) {
  config.Validate();
  EnsureDir(output_dir);
  switch (command) {
    case Command::kTrain: return CmdTrain(config, output_dir, log);
    case Command::kEvaluateNoise: return CmdEvaluateNoise(config, output_dir, log);
    case Command::kCoherenceTable: return CmdCoherenceTable(config, output_dir, log);
    case Command::kSpectrum: return CmdSpectrum(config, output_dir, log);
    case Command::kReport: return CmdReport(config, output_dir, log);
  }
  return {};
}

int ExitCodeFor(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return kExitConfig;
  if (dynamic_cast<const DivergenceError*>(&error)) return kExitDivergence;
  if (dynamic_cast<const IoError*>(&error)) return kExitIo;
  if (dynamic_cast<const FormatError*>(&error)) return kExitFormat;
  if (dynamic_cast<const QuadratureError*>(&error)) return kExitNumerical;
  if (dynamic_cast<const Error*>(&error)) return kExitInvalid;
  return kExitUnexpected;
}

}  // namespace snnlab
