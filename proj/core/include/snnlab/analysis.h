#ifndef SNNLAB_ANALYSIS_H_
#define SNNLAB_ANALYSIS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "snnlab/dataset.h"
#include "snnlab/encoding.h"
#include "snnlab/network.h"
#include "snnlab/spectral.h"

namespace snnlab {

// Single-sided amplitude spectrum of one real signal of length T >= 2:
// |X_k| / T for k = 0..T/2, interior bins doubled. Frequencies are k / T.
SpectrumCurve SignalSpectrum(std::span<const double> signal);

// Mean single-sided spectrum across the units of a spike tensor.
SpectrumCurve SpikeSpectrum(const SpikeTensor& spikes);

// Element-wise mean of curves sharing one frequency grid.
SpectrumCurve AverageSpectra(std::span<const SpectrumCurve> curves);

// Smallest bin frequency at which the cumulative power (squared amplitude,
// summed from DC upwards) reaches `fraction` of the total. Throws
// InvalidArgument when the total power is zero.
double CriticalFrequency(const SpectrumCurve& spectrum, double fraction = 0.7);

// Indices of hidden spiking (conv / FC) layers.
std::vector<std::size_t> HiddenSpikingLayers(const Network& net);

// Euclidean norm of W_l * x_{l-1}[t] over all units and steps, one entry
// per hidden spiking layer.
std::vector<double> Enwsi(const ForwardTrace& trace, const Network& net);

// Event-driven synaptic operations: every non-zero input entry of a weighted
// layer engages its fan-out (out maps x boundary-clipped 3x3 footprint for
// convolutions, the output width for dense layers). Pooling costs nothing.
std::uint64_t CountSynapticOps(const ForwardTrace& trace, const Network& net);

// Spikes per unit per step for each hidden spiking layer, and pooled over
// all of them.
struct SpikeActivity {
  std::vector<double> per_layer;
  double overall = 0.0;
  std::uint64_t spikes = 0;
  std::uint64_t slots = 0;  // units x steps
};
SpikeActivity MeasureSpikeActivity(const ForwardTrace& trace, const Network& net);

// Weighted-input stream of one output neuron, the signal whose spectrum is
// reported for the target class.
std::vector<double> OutputDriveSignal(const ForwardTrace& trace, const Network& net,
                                      int neuron);

struct RunMetrics {
  double accuracy = 0.0;
  double sse_train = 0.0;
  double sse_test = 0.0;
  double spike_activity = 0.0;
  std::vector<double> layer_activity;
  std::uint64_t synaptic_ops = 0;  // total over all evaluated samples and seeds
  double synaptic_ops_per_sample = 0.0;
  std::vector<double> enwsi;  // mean over samples, per hidden spiking layer
  double critical_freq = 0.0;  // mean over samples
  std::vector<double> critical_freqs;  // one per evaluated sample and seed
};

struct EvalOptions {
  int threads = 0;
  double critical_fraction = 0.7;
  // Remove the mean of the target-neuron drive before its spectrum is taken.
  // Off by default: the DC bin is part of the reported spectrum.
  bool detrend_target_signal = false;
};

// Stream id used to derive evaluation encodings: MakeStream(seed, kEvalStream, i).
inline constexpr std::uint64_t kEvalStream = 0xe7a1;

// Encodes every sample with `noise` once per seed, runs the network and
// aggregates metrics. SSE is the mean over samples of sum_k (pred_k - y_k)^2
// and is stored in sse_test.
RunMetrics Evaluate(const Network& net, const Dataset& data, const NoiseSpec& noise,
                    int steps, std::span<const std::uint64_t> seeds,
                    const EvalOptions& options = {});

}  // namespace snnlab

#endif  // SNNLAB_ANALYSIS_H_
