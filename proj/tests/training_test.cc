#include "snnlab/training.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "snnlab/dataset.h"
#include "snnlab/error.h"

namespace snnlab {
namespace {

SpikeTensor RandomInput(int steps, std::size_t units, std::uint64_t seed) {
  Rng rng = MakeStream(seed);
  std::vector<double> px(units);
  for (double& p : px) p = UniformUnit(rng);
  Rng enc = MakeStream(seed, 1);
  return PoissonEncode(Normalize(px), steps, enc);
}

double LossOf(const Network& net, const SpikeTensor& in, const std::vector<double>& y) {
  const auto r = Forward(net, in, in.steps());
  return ComputeLoss(r.prediction, y);
}

TEST(LossTest, HalfSquaredError) {
  EXPECT_DOUBLE_EQ(ComputeLoss(std::vector<double>{0.5, 0.25}, OneHot(1, 2)),
                   0.5 * (0.25 + 0.5625));
  EXPECT_EQ(OneHot(2, 4), (std::vector<double>{0, 0, 1, 0}));
}

TEST(LearningRateTest, StepDecay) {
  TrainConfig c;
  c.learning_rate = 1.0;
  c.lr_decay_epochs = {70, 100};
  EXPECT_DOUBLE_EQ(c.LearningRateAt(1), 1.0);
  EXPECT_DOUBLE_EQ(c.LearningRateAt(69), 1.0);
  EXPECT_DOUBLE_EQ(c.LearningRateAt(70), 0.1);
  EXPECT_NEAR(c.LearningRateAt(150), 0.01, 1e-15);
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), InvalidArgument);
}

// Output weights do not influence spikes, so their gradient is exact and
// central differences must agree to rounding level.
TEST(BackwardTest, OutputGradientMatchesFiniteDifferences) {
  for (const NeuronConfig& cfg : {NeuronConfig::IntegrateAndFire(), NeuronConfig::Leaky(30.0)}) {
    Network net = BuildNetwork(ParseArchitecture("4x4-2C3-2P-6FC-3o"), cfg, 9);
    for (auto& l : net.mutable_layers())
      for (double& w : l.weights) w *= 2.0;
    const SpikeTensor in = RandomInput(15, 16, 31);
    const auto y = OneHot(1, 3);
    const auto fwd = Forward(net, in, 15);
    const GradientSet g = Backward(fwd.trace, net, y);
    const std::size_t out = net.num_layers() - 1;
    const double h = 1e-6;
    for (std::size_t k = 0; k < net.layer(out).weights.size(); ++k) {
      Network plus = net, minus = net;
      plus.mutable_layers()[out].weights[k] += h;
      minus.mutable_layers()[out].weights[k] -= h;
      const double fd = (LossOf(plus, in, y) - LossOf(minus, in, y)) / (2 * h);
      EXPECT_NEAR(g.layers[out][k], fd, 1e-8) << "tau " << cfg.tau_m << " k " << k;
    }
  }
}

// Hidden-layer gradient against a direct transcription of the surrogate
// backward rule for one FC hidden layer.
TEST(BackwardTest, HiddenGradientMatchesReferenceRule) {
  NeuronConfig cfg = NeuronConfig::Leaky(12.0);
  cfg.v_th = 0.5;
  cfg.epsilon = 0.3;
  Network net = BuildNetwork(ParseArchitecture("3x3-4FC-2o"), cfg, 17);
  for (double& w : net.mutable_layers()[0].weights) w *= 2.5;
  const int T = 10;
  const SpikeTensor in = RandomInput(T, 9, 5);
  const auto y = OneHot(0, 2);
  const auto fwd = Forward(net, in, T);
  const GradientSet g = Backward(fwd.trace, net, y);

  const double d = std::exp(-1.0 / 12.0);
  const auto& wo = net.layer(1).weights;
  const auto& s = fwd.trace.layers[0].output;
  std::vector<double> err(2);
  for (int k = 0; k < 2; ++k) err[k] = (fwd.prediction[k] - y[k]) / T;
  std::vector<double> du(T * 4, 0.0);
  for (int j = 0; j < 4; ++j) {
    double carry = 0.0;
    for (int t = T - 1; t >= 0; --t) {
      double ds = 0.0;
      for (int k = 0; k < 2; ++k) ds += err[k] * std::pow(d, T - 1 - t) * wo[k * 4 + j];
      if (s[t * 4 + j] > 0) {
        du[t * 4 + j] = ds / (cfg.v_th + cfg.epsilon);
        carry = 0.0;
      } else {
        du[t * 4 + j] = carry;
        carry = d * carry;
      }
    }
  }
  int active = 0;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 9; ++i) {
      double ref = 0.0;
      for (int t = 0; t < T; ++t) ref += du[t * 4 + j] * in.at(t, i);
      EXPECT_NEAR(g.layers[0][j * 9 + i], ref, 1e-14);
      active += ref != 0.0;
    }
  }
  EXPECT_GT(active, 0);
}

TEST(BackwardTest, LabelSizeMismatchThrows) {
  const Network net = BuildNetwork(ParseArchitecture("3x3-2o"), NeuronConfig{}, 1);
  const auto fwd = Forward(net, RandomInput(4, 9, 1), 4);
  EXPECT_THROW(Backward(fwd.trace, net, OneHot(0, 3)), DimensionError);
}

TEST(TrainTest, LearnsBarsAndIsThreadIndependent) {
  SynthOptions so;
  so.height = 8;
  so.width = 8;
  const Dataset train = SynthDataset(SynthKind::kBars, 64, 3, so);
  const Dataset test = SynthDataset(SynthKind::kBars, 64, 4, so);
  TrainConfig tc;
  tc.epochs = 8;
  tc.batch_size = 8;
  tc.learning_rate = 0.5;
  tc.lr_decay_epochs = {};
  tc.steps = 16;
  tc.seed = 2;
  const Architecture arch = ParseArchitecture("8x8-4C3-2P-16FC-2o");
  Network a = BuildNetwork(arch, NeuronConfig::Leaky(30.0), 2);
  Network b = a;
  tc.threads = 1;
  const auto ha = Train(a, train, &test, tc);
  tc.threads = 3;
  const auto hb = Train(b, train, &test, tc);
  EXPECT_EQ(a, b);
  ASSERT_EQ(ha.size(), 8u);
  EXPECT_LT(ha.back().mean_loss, ha.front().mean_loss);
  EXPECT_GE(ha.back().metrics.accuracy, 0.9);
}

TEST(TrainTest, NonFiniteWeightsDiverge) {
  SynthOptions so;
  so.height = 4;
  so.width = 4;
  const Dataset train = SynthDataset(SynthKind::kBars, 8, 1, so);
  Network net = BuildNetwork(ParseArchitecture("4x4-2o"), NeuronConfig{}, 1);
  TrainConfig tc;
  tc.epochs = 3;
  tc.batch_size = 4;
  tc.learning_rate = 1e308;
  tc.steps = 4;
  EXPECT_THROW(Train(net, train, nullptr, tc), DivergenceError);
}

}  // namespace
}  // namespace snnlab
