#include "snnlab/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "parallel.h"
#include "snnlab/error.h"

namespace snnlab {

namespace {

// dW += sum over inputs of da (x) x for one time-step.
void AccumulateWeightGrad(const LayerSpec& spec, std::span<const double> x,
                          std::span<const double> da, std::vector<double>& dw) {
  if (spec.kind == LayerKind::kConv3x3) {
    const int in_c = spec.in_shape.channels;
    const int out_c = spec.out_shape.channels;
    const int h = spec.in_shape.height;
    const int w = spec.in_shape.width;
    const std::size_t plane = static_cast<std::size_t>(h) * w;
    for (int ic = 0; ic < in_c; ++ic) {
      for (int yy = 0; yy < h; ++yy) {
        for (int xx = 0; xx < w; ++xx) {
          const double v = x[ic * plane + yy * w + xx];
          if (v == 0.0) continue;
          for (int ky = 0; ky < 3; ++ky) {
            const int y = yy - ky + 1;
            if (y < 0 || y >= h) continue;
            for (int kx = 0; kx < 3; ++kx) {
              const int xo = xx - kx + 1;
              if (xo < 0 || xo >= w) continue;
              const std::size_t pos = static_cast<std::size_t>(y) * w + xo;
              for (int oc = 0; oc < out_c; ++oc) {
                dw[((oc * in_c + ic) * 3 + ky) * 3 + kx] += da[oc * plane + pos] * v;
              }
            }
          }
        }
      }
    }
    return;
  }
  const std::size_t n_in = spec.in_shape.size();
  const std::size_t n_out = spec.out_shape.size();
  for (std::size_t i = 0; i < n_in; ++i) {
    const double v = x[i];
    if (v == 0.0) continue;
    for (std::size_t o = 0; o < n_out; ++o) dw[o * n_in + i] += da[o] * v;
  }
}

// dx = W^T da for one time-step.
void PropagateToInput(const Layer& layer, std::span<const double> da, std::span<double> dx) {
  const LayerSpec& spec = layer.spec;
  const auto& wt = layer.weights;
  std::fill(dx.begin(), dx.end(), 0.0);
  if (spec.kind == LayerKind::kConv3x3) {
    const int in_c = spec.in_shape.channels;
    const int out_c = spec.out_shape.channels;
    const int h = spec.in_shape.height;
    const int w = spec.in_shape.width;
    const std::size_t plane = static_cast<std::size_t>(h) * w;
    for (int oc = 0; oc < out_c; ++oc) {
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double g = da[oc * plane + y * w + x];
          if (g == 0.0) continue;
          for (int ky = 0; ky < 3; ++ky) {
            const int yy = y + ky - 1;
            if (yy < 0 || yy >= h) continue;
            for (int kx = 0; kx < 3; ++kx) {
              const int xx = x + kx - 1;
              if (xx < 0 || xx >= w) continue;
              for (int ic = 0; ic < in_c; ++ic) {
                dx[ic * plane + yy * w + xx] += wt[((oc * in_c + ic) * 3 + ky) * 3 + kx] * g;
              }
            }
          }
        }
      }
    }
    return;
  }
  const std::size_t n_in = spec.in_shape.size();
  const std::size_t n_out = spec.out_shape.size();
  for (std::size_t o = 0; o < n_out; ++o) {
    const double g = da[o];
    if (g == 0.0) continue;
    const double* row = wt.data() + o * n_in;
    for (std::size_t i = 0; i < n_in; ++i) dx[i] += row[i] * g;
  }
}

void PoolBackward(const LayerSpec& spec, std::span<const double> dout, std::span<double> dx) {
  const int c = spec.in_shape.channels;
  const int h = spec.in_shape.height;
  const int w = spec.in_shape.width;
  const int oh = h / 2;
  const int ow = w / 2;
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        dx[(static_cast<std::size_t>(ch) * h + y) * w + x] =
            0.25 * dout[(static_cast<std::size_t>(ch) * oh + y / 2) * ow + x / 2];
      }
    }
  }
}

bool AllFinite(const Network& net) {
  for (const Layer& layer : net.layers()) {
    for (double w : layer.weights) {
      if (!std::isfinite(w)) return false;
    }
  }
  return true;
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 0) throw InvalidArgument("epochs must be non-negative");
  if (batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  if (!(learning_rate >= 0.0)) throw InvalidArgument("learning_rate must be non-negative");
}

double TrainConfig::LearningRateAt(int epoch) const {
  double lr = learning_rate;
  for (int e : lr_decay_epochs) {
    if (epoch >= e) lr *= lr_decay_factor;
  }
  return lr;
}

GradientSet GradientSet::ZerosLike(const Network& net) {
  GradientSet g;
  for (const Layer& layer : net.layers()) g.layers.emplace_back(layer.weights.size(), 0.0);
  return g;
}

void GradientSet::Add(const GradientSet& other) {
  if (other.layers.size() != layers.size()) throw DimensionError("GradientSet::Add: layer count");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (other.layers[l].size() != layers[l].size()) {
      throw DimensionError("GradientSet::Add: layer size");
    }
    for (std::size_t i = 0; i < layers[l].size(); ++i) layers[l][i] += other.layers[l][i];
  }
}

void GradientSet::Scale(double factor) {
  for (auto& layer : layers) {
    for (double& g : layer) g *= factor;
  }
}

std::vector<double> OneHot(int label, int num_classes) {
  if (label < 0 || label >= num_classes) throw InvalidArgument("OneHot: label out of range");
  std::vector<double> v(num_classes, 0.0);
  v[label] = 1.0;
  return v;
}

double ComputeLoss(std::span<const double> prediction, std::span<const double> label) {
  if (prediction.size() != label.size()) {
    throw DimensionError("ComputeLoss: prediction has " + std::to_string(prediction.size()) +
                         " entries, label has " + std::to_string(label.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < label.size(); ++k) {
    const double e = prediction[k] - label[k];
    sum += e * e;
  }
  return 0.5 * sum;
}

GradientSet Backward(const ForwardTrace& trace, const Network& net,
                     std::span<const double> label) {
  const std::size_t n_layers = net.num_layers();
  if (trace.layers.size() != n_layers) {
    throw DimensionError("Backward: trace has " + std::to_string(trace.layers.size()) +
                         " layers, network has " + std::to_string(n_layers));
  }
  const int steps = trace.steps;
  for (std::size_t l = 0; l < n_layers; ++l) {
    const LayerSpec& spec = net.layer(l).spec;
    const std::size_t expect = spec.out_shape.size() * static_cast<std::size_t>(steps);
    const LayerTrace& lt = trace.layers[l];
    if ((spec.has_weights() && lt.weighted.size() != expect) ||
        (spec.kind != LayerKind::kAvgPool2x2 && lt.potential.size() != expect) ||
        (spec.kind != LayerKind::kOutput && lt.output.size() != expect)) {
      throw DimensionError("Backward: trace of layer " + std::to_string(l) +
                           " does not match the network");
    }
  }
  const std::size_t n_out = net.layer(n_layers - 1).spec.out_shape.size();
  if (label.size() != n_out) throw DimensionError("Backward: label size mismatch");

  const NeuronConfig& cfg = net.neuron();
  const double decay = DecayFactor(cfg);
  GradientSet grads = GradientSet::ZerosLike(net);

  // Output layer: U_L[T-1] = sum_t decay^(T-1-t) a_L[t], prediction = U_L/T.
  const auto& u_last = trace.layers.back().potential;
  std::vector<double> g_out(n_out);
  for (std::size_t o = 0; o < n_out; ++o) {
    const double pred = u_last[static_cast<std::size_t>(steps - 1) * n_out + o] / steps;
    g_out[o] = (pred - label[o]) / steps;
  }

  // delta[t] holds dLoss/d(weighted input) of the current layer, or
  // dLoss/d(output) when walking through pooling and spiking stages.
  std::vector<double> delta(static_cast<std::size_t>(steps) * n_out);
  double coef = 1.0;
  for (int t = steps - 1; t >= 0; --t) {
    for (std::size_t o = 0; o < n_out; ++o) delta[t * n_out + o] = coef * g_out[o];
    coef *= decay;
  }

  for (std::size_t l = n_layers; l-- > 0;) {
    const Layer& layer = net.layer(l);
    const LayerSpec& spec = layer.spec;
    const std::size_t n = spec.out_shape.size();
    const std::size_t n_in = spec.in_shape.size();
    const LayerTrace& lt = trace.layers[l];

    if (spec.is_spiking()) {
      // delta currently holds dLoss/dO; turn it into dLoss/dU_pre in place.
      std::vector<double> carry(n, 0.0);
      for (int t = steps - 1; t >= 0; --t) {
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t k = static_cast<std::size_t>(t) * n + i;
          const double spike = lt.output[k];
          const double du = spike > 0.0 ? delta[k] * SurrogateGrad(spike, cfg) : carry[i];
          delta[k] = du;
          carry[i] = spike > 0.0 ? 0.0 : decay * du;
        }
      }
    }

    if (spec.has_weights()) {
      for (int t = 0; t < steps; ++t) {
        AccumulateWeightGrad(spec, trace.LayerInput(net, l, t),
                             {delta.data() + static_cast<std::size_t>(t) * n, n},
                             grads.layers[l]);
      }
    }
    if (l == 0) break;

    std::vector<double> below(static_cast<std::size_t>(steps) * n_in);
    for (int t = 0; t < steps; ++t) {
      std::span<const double> d{delta.data() + static_cast<std::size_t>(t) * n, n};
      std::span<double> dx{below.data() + static_cast<std::size_t>(t) * n_in, n_in};
      if (spec.kind == LayerKind::kAvgPool2x2) {
        PoolBackward(spec, d, dx);
      } else {
        PropagateToInput(layer, d, dx);
      }
    }
    delta = std::move(below);
  }
  return grads;
}

void ApplyUpdate(Network& net, const GradientSet& grads, double learning_rate) {
  auto& layers = net.mutable_layers();
  if (grads.layers.size() != layers.size()) throw DimensionError("ApplyUpdate: layer count");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    auto& w = layers[l].weights;
    if (grads.layers[l].size() != w.size()) throw DimensionError("ApplyUpdate: layer size");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= learning_rate * grads.layers[l][i];
  }
}

std::vector<EpochRecord> Train(Network& net, const Dataset& train, const Dataset* test,
                               const TrainConfig& tcfg, const EpochCallback& on_epoch) {
  tcfg.Validate();
  if (train.size() == 0) throw InvalidArgument("Train: empty dataset");
  if (static_cast<std::size_t>(train.num_classes) > static_cast<std::size_t>(net.num_classes())) {
    throw DimensionError("Train: dataset has more classes than network outputs");
  }
  const std::size_t n = train.size();
  const int classes = net.num_classes();

  std::vector<std::vector<double>> pixels(n);
  for (std::size_t i = 0; i < n; ++i) pixels[i] = Normalize(train.ChannelsFirst(i));

  struct SampleOutcome {
    GradientSet grads;
    double loss = 0.0;
    double sse = 0.0;
    bool correct = false;
  };

  std::vector<EpochRecord> history;
  std::vector<std::size_t> order(n);
  for (int epoch = 1; epoch <= tcfg.epochs; ++epoch) {
    const double lr = tcfg.LearningRateAt(epoch);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng = MakeStream(tcfg.seed, kShuffleStream, epoch);
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0, sse_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < n; start += tcfg.batch_size) {
      const std::size_t count = std::min<std::size_t>(tcfg.batch_size, n - start);
      std::vector<SampleOutcome> outcomes(count);
      internal::ParallelFor(count, tcfg.threads, [&](std::size_t j) {
        const std::size_t idx = order[start + j];
        Rng rng = MakeStream(tcfg.seed, kTrainStream + static_cast<std::uint64_t>(epoch), idx);
        const SpikeTensor input = PoissonEncode(pixels[idx], tcfg.steps, rng);
        const ForwardResult fwd = Forward(net, input, tcfg.steps);
        const auto label = OneHot(train.labels[idx], classes);
        SampleOutcome& out = outcomes[j];
        out.loss = ComputeLoss(fwd.prediction, label);
        out.sse = 2.0 * out.loss;
        const auto best = std::max_element(fwd.prediction.begin(), fwd.prediction.end()) -
                          fwd.prediction.begin();
        out.correct = best == train.labels[idx];
        out.grads = Backward(fwd.trace, net, label);
      });

      GradientSet batch = GradientSet::ZerosLike(net);
      for (const SampleOutcome& out : outcomes) {
        if (!std::isfinite(out.loss)) {
          std::ostringstream msg;
          msg << "training diverged at epoch " << epoch << ", batch starting at " << start
              << ": non-finite loss (tau_m=" << net.neuron().tau_m << ")";
          throw DivergenceError(msg.str());
        }
        loss_sum += out.loss;
        sse_sum += out.sse;
        correct += out.correct ? 1 : 0;
        batch.Add(out.grads);
      }
      batch.Scale(1.0 / static_cast<double>(count));
      ApplyUpdate(net, batch, lr);
      if (!AllFinite(net)) {
        throw DivergenceError("training diverged at epoch " + std::to_string(epoch) +
                              ": non-finite weights after update");
      }
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.learning_rate = lr;
    rec.mean_loss = loss_sum / n;
    rec.train_accuracy = static_cast<double>(correct) / n;
    if (test != nullptr) {
      const std::uint64_t seeds[] = {tcfg.seed};
      EvalOptions opts;
      opts.threads = tcfg.threads;
      rec.metrics = Evaluate(net, *test, NoiseSpec::Clean(), tcfg.steps, seeds, opts);
    } else {
      rec.metrics.accuracy = rec.train_accuracy;
    }
    rec.metrics.sse_train = sse_sum / n;
    history.push_back(rec);
    if (on_epoch) on_epoch(rec, net);
  }
  return history;
}

}  // namespace snnlab
