#include "snnlab/analysis.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.h"
#include "snnlab/error.h"

namespace snnlab {

SpectrumCurve SignalSpectrum(std::span<const double> signal) {
  const std::size_t n = signal.size();
  if (n < 2) throw InvalidArgument("SignalSpectrum needs at least two samples");
  const auto dft = RealDft(signal);
  SpectrumCurve curve;
  curve.frequencies.resize(dft.size());
  curve.values.resize(dft.size());
  for (std::size_t k = 0; k < dft.size(); ++k) {
    const bool unique_bin = k == 0 || (n % 2 == 0 && k == n / 2);
    curve.frequencies[k] = static_cast<double>(k) / n;
    curve.values[k] = std::abs(dft[k]) / n * (unique_bin ? 1.0 : 2.0);
  }
  return curve;
}

SpectrumCurve SpikeSpectrum(const SpikeTensor& spikes) {
  if (spikes.steps() < 2) throw InvalidArgument("SpikeSpectrum needs T >= 2");
  std::vector<double> channel(spikes.steps());
  SpectrumCurve mean;
  for (std::size_t i = 0; i < spikes.units(); ++i) {
    for (int t = 0; t < spikes.steps(); ++t) channel[t] = spikes.at(t, i);
    SpectrumCurve c = SignalSpectrum(channel);
    if (mean.values.empty()) {
      mean = std::move(c);
    } else {
      for (std::size_t k = 0; k < c.size(); ++k) mean.values[k] += c.values[k];
    }
  }
  for (double& v : mean.values) v /= static_cast<double>(spikes.units());
  return mean;
}

SpectrumCurve AverageSpectra(std::span<const SpectrumCurve> curves) {
  if (curves.empty()) throw InvalidArgument("AverageSpectra: no curves");
  SpectrumCurve mean = curves.front();
  for (std::size_t c = 1; c < curves.size(); ++c) {
    if (curves[c].size() != mean.size()) {
      throw DimensionError("AverageSpectra: curves on different grids");
    }
    for (std::size_t k = 0; k < mean.size(); ++k) mean.values[k] += curves[c].values[k];
  }
  for (double& v : mean.values) v /= static_cast<double>(curves.size());
  return mean;
}

double CriticalFrequency(const SpectrumCurve& spectrum, double fraction) {
  double total = 0.0;
  for (double v : spectrum.values) total += v * v;
  if (!(total > 0.0)) throw InvalidArgument("CriticalFrequency: zero total power");
  const double target = fraction * total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    cumulative += spectrum.values[k] * spectrum.values[k];
    // Relative slack absorbs summation-order rounding at exact bin edges.
    if (cumulative >= target * (1.0 - 1e-12)) return spectrum.frequencies[k];
  }
  return spectrum.frequencies.back();
}

std::vector<std::size_t> HiddenSpikingLayers(const Network& net) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    if (net.layer(l).spec.is_spiking()) out.push_back(l);
  }
  return out;
}

std::vector<double> Enwsi(const ForwardTrace& trace, const Network& net) {
  std::vector<double> out;
  for (std::size_t l : HiddenSpikingLayers(net)) {
    double sum = 0.0;
    for (double v : trace.layers[l].weighted) sum += v * v;
    out.push_back(std::sqrt(sum));
  }
  return out;
}

std::uint64_t CountSynapticOps(const ForwardTrace& trace, const Network& net) {
  std::uint64_t ops = 0;
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const LayerSpec& spec = net.layer(l).spec;
    if (!spec.has_weights()) continue;
    if (spec.kind == LayerKind::kConv3x3) {
      const int h = spec.in_shape.height;
      const int w = spec.in_shape.width;
      auto span3 = [](int pos, int extent) {
        return (pos > 0 ? 1 : 0) + 1 + (pos + 1 < extent ? 1 : 0);
      };
      for (int t = 0; t < trace.steps; ++t) {
        const auto in = trace.LayerInput(net, l, t);
        for (std::size_t idx = 0; idx < in.size(); ++idx) {
          if (in[idx] == 0.0) continue;
          const int pos = static_cast<int>(idx % (static_cast<std::size_t>(h) * w));
          ops += static_cast<std::uint64_t>(spec.out_shape.channels) *
                 span3(pos / w, h) * span3(pos % w, w);
        }
      }
    } else {
      const std::uint64_t fan_out = spec.out_shape.size();
      for (int t = 0; t < trace.steps; ++t) {
        const auto in = trace.LayerInput(net, l, t);
        ops += fan_out * static_cast<std::uint64_t>(
                             std::count_if(in.begin(), in.end(), [](double v) { return v != 0.0; }));
      }
    }
  }
  return ops;
}

SpikeActivity MeasureSpikeActivity(const ForwardTrace& trace, const Network& net) {
  SpikeActivity activity;
  for (std::size_t l : HiddenSpikingLayers(net)) {
    const auto& out = trace.layers[l].output;
    const auto spikes = static_cast<std::uint64_t>(
        std::count_if(out.begin(), out.end(), [](double v) { return v > 0.0; }));
    activity.per_layer.push_back(out.empty() ? 0.0 : static_cast<double>(spikes) / out.size());
    activity.spikes += spikes;
    activity.slots += out.size();
  }
  if (activity.slots > 0) {
    activity.overall = static_cast<double>(activity.spikes) / activity.slots;
  }
  return activity;
}

std::vector<double> OutputDriveSignal(const ForwardTrace& trace, const Network& net,
                                      int neuron) {
  const std::size_t last = net.num_layers() - 1;
  const std::size_t n = net.layer(last).spec.out_shape.size();
  if (neuron < 0 || static_cast<std::size_t>(neuron) >= n) {
    throw InvalidArgument("OutputDriveSignal: neuron index out of range");
  }
  std::vector<double> signal(trace.steps);
  for (int t = 0; t < trace.steps; ++t) {
    signal[t] = trace.layers[last].weighted[static_cast<std::size_t>(t) * n + neuron];
  }
  return signal;
}

namespace {

struct SampleResult {
  bool correct = false;
  double sse = 0.0;
  std::uint64_t spikes = 0;
  std::uint64_t slots = 0;
  std::vector<std::uint64_t> layer_spikes;
  std::vector<std::uint64_t> layer_slots;
  std::uint64_t ops = 0;
  std::vector<double> enwsi;
  double critical_freq = 0.0;
  bool has_critical = false;
};

}  // namespace

RunMetrics Evaluate(const Network& net, const Dataset& data, const NoiseSpec& noise,
                    int steps, std::span<const std::uint64_t> seeds,
                    const EvalOptions& options) {
  if (seeds.empty()) throw InvalidArgument("Evaluate needs at least one seed");
  if (data.size() == 0) throw InvalidArgument("Evaluate: empty dataset");
  noise.Validate();
  const std::size_t n = data.size();
  const std::size_t total = n * seeds.size();
  std::vector<SampleResult> results(total);

  internal::ParallelFor(total, options.threads, [&](std::size_t job) {
    const std::size_t s = job / n;
    const std::size_t i = job % n;
    Rng rng = MakeStream(seeds[s], kEvalStream, i);
    const auto pixels = Normalize(data.ChannelsFirst(i));
    const SpikeTensor input = EncodeNoisy(pixels, steps, noise, rng);
    const ForwardResult fwd = Forward(net, input, steps);

    SampleResult& r = results[job];
    const int label = data.labels[i];
    const auto& pred = fwd.prediction;
    const auto best = std::max_element(pred.begin(), pred.end()) - pred.begin();
    r.correct = best == label;
    for (std::size_t k = 0; k < pred.size(); ++k) {
      const double err = pred[k] - (static_cast<int>(k) == label ? 1.0 : 0.0);
      r.sse += err * err;
    }
    const SpikeActivity act = MeasureSpikeActivity(fwd.trace, net);
    r.spikes = act.spikes;
    r.slots = act.slots;
    for (std::size_t l : HiddenSpikingLayers(net)) {
      const auto& out = fwd.trace.layers[l].output;
      r.layer_spikes.push_back(static_cast<std::uint64_t>(
          std::count_if(out.begin(), out.end(), [](double v) { return v > 0.0; })));
      r.layer_slots.push_back(out.size());
    }
    r.ops = CountSynapticOps(fwd.trace, net);
    r.enwsi = Enwsi(fwd.trace, net);

    std::vector<double> drive = OutputDriveSignal(fwd.trace, net, label);
    if (options.detrend_target_signal) {
      const double mean = std::accumulate(drive.begin(), drive.end(), 0.0) / drive.size();
      for (double& v : drive) v -= mean;
    }
    if (steps >= 2 && std::any_of(drive.begin(), drive.end(), [](double v) { return v != 0.0; })) {
      r.critical_freq = CriticalFrequency(SignalSpectrum(drive), options.critical_fraction);
      r.has_critical = true;
    }
  });

  RunMetrics m;
  std::uint64_t correct = 0, spikes = 0, slots = 0;
  std::vector<std::uint64_t> layer_spikes, layer_slots;
  double sse = 0.0;
  for (const SampleResult& r : results) {
    correct += r.correct ? 1 : 0;
    sse += r.sse;
    spikes += r.spikes;
    slots += r.slots;
    m.synaptic_ops += r.ops;
    if (layer_spikes.empty()) {
      layer_spikes.assign(r.layer_spikes.size(), 0);
      layer_slots.assign(r.layer_slots.size(), 0);
      m.enwsi.assign(r.enwsi.size(), 0.0);
    }
    for (std::size_t k = 0; k < r.layer_spikes.size(); ++k) {
      layer_spikes[k] += r.layer_spikes[k];
      layer_slots[k] += r.layer_slots[k];
      m.enwsi[k] += r.enwsi[k];
    }
    if (r.has_critical) m.critical_freqs.push_back(r.critical_freq);
  }
  const double count = static_cast<double>(total);
  m.accuracy = correct / count;
  m.sse_test = sse / count;
  m.spike_activity = slots > 0 ? static_cast<double>(spikes) / slots : 0.0;
  for (std::size_t k = 0; k < layer_spikes.size(); ++k) {
    m.layer_activity.push_back(layer_slots[k] > 0
                                   ? static_cast<double>(layer_spikes[k]) / layer_slots[k]
                                   : 0.0);
  }
  for (double& e : m.enwsi) e /= count;
  m.synaptic_ops_per_sample = static_cast<double>(m.synaptic_ops) / count;
  if (!m.critical_freqs.empty()) {
    m.critical_freq = std::accumulate(m.critical_freqs.begin(), m.critical_freqs.end(), 0.0) /
                      m.critical_freqs.size();
  }
  return m;
}

}  // namespace snnlab
