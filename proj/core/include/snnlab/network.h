#ifndef SNNLAB_NETWORK_H_
#define SNNLAB_NETWORK_H_

#include <cstdint>
#include <span>
#include <vector>

#include "snnlab/architecture.h"
#include "snnlab/encoding.h"
#include "snnlab/neuron.h"

namespace snnlab {

struct Layer {
  LayerSpec spec;
  std::vector<double> weights;  // empty for pooling layers

  bool operator==(const Layer&) const = default;
};

// Weights plus the neuron model shared by all spiking layers. Membrane
// potentials are not stored here: every forward pass starts from zero.
class Network {
 public:
  Network() = default;
  Network(std::vector<Layer> layers, NeuronConfig neuron);

  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& mutable_layers() { return layers_; }
  const Layer& layer(std::size_t l) const { return layers_[l]; }
  std::size_t num_layers() const { return layers_.size(); }

  const NeuronConfig& neuron() const { return neuron_; }
  const Shape& input_shape() const { return layers_.front().spec.in_shape; }
  int num_classes() const { return static_cast<int>(layers_.back().spec.out_shape.size()); }

  Architecture architecture() const;

  bool operator==(const Network&) const = default;

 private:
  std::vector<Layer> layers_;
  NeuronConfig neuron_;
};

// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), drawn from init_seed.
Network BuildNetwork(const std::vector<LayerSpec>& specs, const NeuronConfig& neuron,
                     std::uint64_t init_seed);
Network BuildNetwork(const Architecture& arch, const NeuronConfig& neuron,
                     std::uint64_t init_seed);

// Weighted input of one layer for one time-step: 3x3 cross-correlation
// (stride 1, zero padding 1), 2x2 block mean, or dense product.
void LayerApply(const Layer& layer, std::span<const double> in, std::span<double> out);

// Per-layer record of one forward pass, each array stored T x units.
struct LayerTrace {
  // Spikes of spiking layers, pooled values of pooling layers; empty for
  // the output layer.
  std::vector<double> output;
  // W_l * x_{l-1}[t]; empty for pooling layers.
  std::vector<double> weighted;
  // Pre-reset potential of spiking layers; U_L[t] for the output layer.
  std::vector<double> potential;
};

struct ForwardTrace {
  int steps = 0;
  SpikeTensor input;
  std::vector<LayerTrace> layers;

  // Input seen by layer l at time t.
  std::span<const double> LayerInput(const Network& net, std::size_t l, int t) const;
};

struct ForwardResult {
  std::vector<double> prediction;  // U_L[T] / T
  ForwardTrace trace;
};

ForwardResult Forward(const Network& net, const SpikeTensor& input, int steps);

}  // namespace snnlab

#endif  // SNNLAB_NETWORK_H_
