#ifndef SNNLAB_TRAINING_H_
#define SNNLAB_TRAINING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "snnlab/analysis.h"
#include "snnlab/dataset.h"
#include "snnlab/network.h"

namespace snnlab {

struct TrainConfig {
  int epochs = 150;
  int batch_size = 64;
  double learning_rate = 0.01;
  std::vector<int> lr_decay_epochs = {70, 100};  // 1-based epochs
  double lr_decay_factor = 0.1;
  int steps = 100;  // time-steps T
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency

  void Validate() const;
  double LearningRateAt(int epoch) const;  // epoch is 1-based

  bool operator==(const TrainConfig&) const = default;
};

// Per-layer weight gradients, same layout as Network weights (empty for
// pooling layers).
struct GradientSet {
  std::vector<std::vector<double>> layers;

  static GradientSet ZerosLike(const Network& net);
  void Add(const GradientSet& other);
  void Scale(double factor);
  bool operator==(const GradientSet&) const = default;
};

std::vector<double> OneHot(int label, int num_classes);

// 0.5 * sum_k (prediction_k - label_k)^2.
double ComputeLoss(std::span<const double> prediction, std::span<const double> label);

// Backpropagation through time of ComputeLoss(U_L[T]/T, label). The output
// layer is differentiated exactly; hidden spikes use SurrogateGrad. The
// membrane recurrence carries gradient through the decay on non-spiking
// steps and is cut at resets.
GradientSet Backward(const ForwardTrace& trace, const Network& net,
                     std::span<const double> label);

// W <- W - lr * grads.
void ApplyUpdate(Network& net, const GradientSet& grads, double learning_rate);

struct EpochRecord {
  int epoch = 0;
  double learning_rate = 0.0;
  double mean_loss = 0.0;       // mean ComputeLoss over training samples
  double train_accuracy = 0.0;  // from the training passes of the epoch
  RunMetrics metrics;           // sse_train from training passes, rest from test set
};

using EpochCallback = std::function<void(const EpochRecord&, const Network&)>;

inline constexpr std::uint64_t kTrainStream = 0x7a11;
inline constexpr std::uint64_t kShuffleStream = 0x5bff;

// Mini-batch SGD with fresh Poisson encodings every epoch. The batch gradient
// is the mean of per-sample gradients, reduced in sample order. When `test`
// is non-null it is evaluated (clean, seed tcfg.seed) after every epoch.
// Throws DivergenceError when the loss or any weight becomes non-finite.
std::vector<EpochRecord> Train(Network& net, const Dataset& train, const Dataset* test,
                               const TrainConfig& tcfg, const EpochCallback& on_epoch = {});

}  // namespace snnlab

#endif  // SNNLAB_TRAINING_H_
