#include "snnlab/network.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "snnlab/error.h"

namespace snnlab {

namespace {

void ApplyConv(const LayerSpec& spec, const std::vector<double>& w,
               std::span<const double> in, std::span<double> out) {
  const int in_c = spec.in_shape.channels;
  const int out_c = spec.out_shape.channels;
  const int h = spec.in_shape.height;
  const int wd = spec.in_shape.width;
  const std::size_t plane = static_cast<std::size_t>(h) * wd;
  std::fill(out.begin(), out.end(), 0.0);
  // Scatter each non-zero input over the outputs whose window covers it.
  for (int ic = 0; ic < in_c; ++ic) {
    for (int yy = 0; yy < h; ++yy) {
      for (int xx = 0; xx < wd; ++xx) {
        const double v = in[ic * plane + yy * wd + xx];
        if (v == 0.0) continue;
        for (int ky = 0; ky < 3; ++ky) {
          const int y = yy - ky + 1;
          if (y < 0 || y >= h) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int x = xx - kx + 1;
            if (x < 0 || x >= wd) continue;
            const std::size_t pos = static_cast<std::size_t>(y) * wd + x;
            for (int oc = 0; oc < out_c; ++oc) {
              out[oc * plane + pos] += w[((oc * in_c + ic) * 3 + ky) * 3 + kx] * v;
            }
          }
        }
      }
    }
  }
}

void ApplyPool(const LayerSpec& spec, std::span<const double> in, std::span<double> out) {
  const int c = spec.in_shape.channels;
  const int h = spec.in_shape.height;
  const int w = spec.in_shape.width;
  const int oh = h / 2;
  const int ow = w / 2;
  for (int ch = 0; ch < c; ++ch) {
    const double* src = in.data() + static_cast<std::size_t>(ch) * h * w;
    double* dst = out.data() + static_cast<std::size_t>(ch) * oh * ow;
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        const double* p = src + (2 * y) * w + 2 * x;
        dst[y * ow + x] = 0.25 * (p[0] + p[1] + p[w] + p[w + 1]);
      }
    }
  }
}

void ApplyDense(const LayerSpec& spec, const std::vector<double>& w,
                std::span<const double> in, std::span<double> out) {
  const std::size_t n_in = spec.in_shape.size();
  const std::size_t n_out = spec.out_shape.size();
  thread_local std::vector<std::size_t> active;
  active.clear();
  for (std::size_t i = 0; i < n_in; ++i) {
    if (in[i] != 0.0) active.push_back(i);
  }
  for (std::size_t o = 0; o < n_out; ++o) {
    const double* row = w.data() + o * n_in;
    double acc = 0.0;
    for (std::size_t i : active) acc += row[i] * in[i];
    out[o] = acc;
  }
}

}  // namespace

Network::Network(std::vector<Layer> layers, NeuronConfig neuron)
    : layers_(std::move(layers)), neuron_(neuron) {
  neuron_.Validate();
  std::vector<LayerSpec> specs;
  for (const Layer& layer : layers_) {
    if (layer.weights.size() != layer.spec.weight_count()) {
      throw DimensionError("layer weights hold " + std::to_string(layer.weights.size()) +
                           " values, expected " +
                           std::to_string(layer.spec.weight_count()));
    }
    specs.push_back(layer.spec);
  }
  ValidateLayerChain(specs);
}

Architecture Network::architecture() const {
  Architecture arch;
  arch.input = input_shape();
  for (const Layer& layer : layers_) arch.layers.push_back(layer.spec);
  return arch;
}

Network BuildNetwork(const std::vector<LayerSpec>& specs, const NeuronConfig& neuron,
                     std::uint64_t init_seed) {
  ValidateLayerChain(specs);
  Rng rng = MakeStream(init_seed, 0x1417);
  std::vector<Layer> layers;
  layers.reserve(specs.size());
  for (const LayerSpec& spec : specs) {
    Layer layer{spec, std::vector<double>(spec.weight_count())};
    const double bound = 1.0 / std::sqrt(static_cast<double>(spec.fan_in()));
    for (double& w : layer.weights) w = bound * (2.0 * UniformUnit(rng) - 1.0);
    layers.push_back(std::move(layer));
  }
  return Network(std::move(layers), neuron);
}

Network BuildNetwork(const Architecture& arch, const NeuronConfig& neuron,
                     std::uint64_t init_seed) {
  return BuildNetwork(arch.layers, neuron, init_seed);
}

void LayerApply(const Layer& layer, std::span<const double> in, std::span<double> out) {
  const LayerSpec& spec = layer.spec;
  if (in.size() != spec.in_shape.size() || out.size() != spec.out_shape.size()) {
    throw DimensionError("LayerApply: got " + std::to_string(in.size()) + " -> " +
                         std::to_string(out.size()) + " values for layer " +
                         spec.in_shape.ToString() + " -> " + spec.out_shape.ToString());
  }
  switch (spec.kind) {
    case LayerKind::kConv3x3: ApplyConv(spec, layer.weights, in, out); break;
    case LayerKind::kAvgPool2x2: ApplyPool(spec, in, out); break;
    case LayerKind::kFullyConnected:
    case LayerKind::kOutput: ApplyDense(spec, layer.weights, in, out); break;
  }
}

std::span<const double> ForwardTrace::LayerInput(const Network& net, std::size_t l,
                                                 int t) const {
  if (l == 0) return input.step(t);
  const std::size_t n = net.layer(l - 1).spec.out_shape.size();
  return {layers[l - 1].output.data() + static_cast<std::size_t>(t) * n, n};
}

ForwardResult Forward(const Network& net, const SpikeTensor& input, int steps) {
  if (input.steps() != steps) {
    throw DimensionError("Forward: input holds " + std::to_string(input.steps()) +
                         " steps, expected " + std::to_string(steps));
  }
  if (input.units() != net.input_shape().size()) {
    throw DimensionError("Forward: input has " + std::to_string(input.units()) +
                         " units, network expects " + net.input_shape().ToString());
  }
  const std::size_t n_layers = net.num_layers();
  const NeuronConfig& cfg = net.neuron();

  ForwardResult result;
  ForwardTrace& trace = result.trace;
  trace.steps = steps;
  trace.input = input;
  trace.layers.resize(n_layers);

  std::vector<LayerState> states;
  for (std::size_t l = 0; l < n_layers; ++l) {
    const LayerSpec& spec = net.layer(l).spec;
    const std::size_t n = spec.out_shape.size();
    const std::size_t total = n * static_cast<std::size_t>(steps);
    LayerTrace& lt = trace.layers[l];
    if (spec.kind != LayerKind::kOutput) lt.output.assign(total, 0.0);
    if (spec.has_weights()) lt.weighted.assign(total, 0.0);
    if (spec.kind != LayerKind::kAvgPool2x2) lt.potential.assign(total, 0.0);
    states.emplace_back(spec.kind == LayerKind::kAvgPool2x2 ? 0 : n);
  }

  for (int t = 0; t < steps; ++t) {
    for (std::size_t l = 0; l < n_layers; ++l) {
      const Layer& layer = net.layer(l);
      const std::size_t n = layer.spec.out_shape.size();
      const std::size_t offset = static_cast<std::size_t>(t) * n;
      LayerTrace& lt = trace.layers[l];
      std::span<const double> in = trace.LayerInput(net, l, t);
      switch (layer.spec.kind) {
        case LayerKind::kAvgPool2x2:
          LayerApply(layer, in, {lt.output.data() + offset, n});
          break;
        case LayerKind::kConv3x3:
        case LayerKind::kFullyConnected: {
          std::span<double> weighted{lt.weighted.data() + offset, n};
          LayerApply(layer, in, weighted);
          IntegrateStep(cfg, weighted, states[l], {lt.potential.data() + offset, n});
          std::copy(states[l].o.begin(), states[l].o.end(), lt.output.begin() + offset);
          break;
        }
        case LayerKind::kOutput: {
          std::span<double> weighted{lt.weighted.data() + offset, n};
          LayerApply(layer, in, weighted);
          AccumulateOutputStep(cfg, weighted, states[l]);
          std::copy(states[l].u.begin(), states[l].u.end(), lt.potential.begin() + offset);
          break;
        }
      }
    }
  }

  const LayerState& out = states.back();
  result.prediction.resize(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) result.prediction[i] = out.u[i] / steps;
  return result;
}

}  // namespace snnlab
