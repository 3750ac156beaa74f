#include "snnlab/analysis.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "snnlab/architecture.h"
#include "snnlab/dataset.h"
#include "snnlab/error.h"

namespace snnlab {
namespace {

TEST(SignalSpectrumTest, ZeroTrain) {
  const auto s = SignalSpectrum(std::vector<double>(100, 0.0));
  ASSERT_EQ(s.size(), 51u);
  for (double v : s.values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(CriticalFrequency(s), InvalidArgument);
}

TEST(SignalSpectrumTest, ConstantTrainIsAllDc) {
  const auto s = SignalSpectrum(std::vector<double>(100, 1.0));
  EXPECT_NEAR(s.values[0], 1.0, 1e-14);
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_NEAR(s.values[k], 0.0, 1e-14);
  EXPECT_EQ(CriticalFrequency(s), 0.0);
}

TEST(SignalSpectrumTest, AlternatingTrainPeaksAtNyquist) {
  std::vector<double> x(100);
  for (int t = 0; t < 100; ++t) x[t] = t % 2 == 0 ? 1.0 : 0.0;
  const auto s = SignalSpectrum(x);
  EXPECT_DOUBLE_EQ(s.frequencies.back(), 0.5);
  EXPECT_NEAR(s.values.back(), 0.5, 1e-14);
  EXPECT_NEAR(s.values[0], 0.5, 1e-14);
  for (std::size_t k = 1; k + 1 < s.size(); ++k) EXPECT_NEAR(s.values[k], 0.0, 1e-14);
}

TEST(SignalSpectrumTest, SingleToneAmplitude) {
  std::vector<double> x(64);
  for (int t = 0; t < 64; ++t) x[t] = 0.7 * std::cos(2.0 * M_PI * 5.0 * t / 64.0);
  const auto s = SignalSpectrum(x);
  EXPECT_NEAR(s.values[5], 0.7, 1e-13);
  EXPECT_DOUBLE_EQ(s.frequencies[5], 5.0 / 64.0);
}

TEST(CriticalFrequencyTest, FlatSpectrum) {
  SpectrumCurve c;
  for (int k = 0; k <= 50; ++k) {
    c.frequencies.push_back(k / 100.0);
    c.values.push_back(1.0);
  }
  EXPECT_NEAR(CriticalFrequency(c, 0.7), 0.35, 1e-12);
}

TEST(CriticalFrequencyTest, MonotoneInFraction) {
  Rng rng = MakeStream(4);
  std::vector<double> x(100);
  for (double& v : x) v = UniformUnit(rng) < 0.3 ? 1.0 : 0.0;
  const auto s = SignalSpectrum(x);
  double prev = 0.0;
  for (double f = 0.05; f <= 1.0; f += 0.05) {
    const double cf = CriticalFrequency(s, f);
    EXPECT_GE(cf, prev);
    EXPECT_LE(cf, 0.5);
    prev = cf;
  }
}

struct Fixture {
  Network net;
  ForwardTrace trace;
};

Fixture RunRandomNet(const char* arch, std::uint64_t seed, double gain = 3.0) {
  Network net = BuildNetwork(ParseArchitecture(arch), NeuronConfig::Leaky(20.0), seed);
  for (auto& l : net.mutable_layers())
    for (double& w : l.weights) w *= gain;
  const std::size_t units = net.input_shape().size();
  Rng rng = MakeStream(seed, 9);
  std::vector<double> px(units);
  for (double& p : px) p = UniformUnit(rng);
  Rng enc = MakeStream(seed, 10);
  const SpikeTensor in = PoissonEncode(Normalize(px), 12, enc);
  auto fwd = Forward(net, in, 12);
  return {net, std::move(fwd.trace)};
}

TEST(SynapticOpsTest, ZeroSpikesZeroOps) {
  const Network net = BuildNetwork(ParseArchitecture("4x4-2C3-2P-5FC-2o"), NeuronConfig{}, 1);
  SpikeTensor in(6, 16, true);
  const auto fwd = Forward(net, in, 6);
  EXPECT_EQ(CountSynapticOps(fwd.trace, net), 0u);
}

TEST(SynapticOpsTest, OneSpikeIntoDenseLayer) {
  const Network net = BuildNetwork(ParseArchitecture("1x4-10o"), NeuronConfig{}, 1);
  SpikeTensor in(3, 4, true);
  in.step(1)[2] = 1.0;
  const auto fwd = Forward(net, in, 3);
  EXPECT_EQ(CountSynapticOps(fwd.trace, net), 10u);
}

// Brute force: per input event, count the weights actually multiplied.
std::uint64_t RecountOps(const ForwardTrace& trace, const Network& net) {
  std::uint64_t ops = 0;
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const LayerSpec& s = net.layer(l).spec;
    if (!s.has_weights()) continue;
    for (int t = 0; t < trace.steps; ++t) {
      const auto in = trace.LayerInput(net, l, t);
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] == 0.0) continue;
        if (s.kind != LayerKind::kConv3x3) {
          ops += s.out_shape.size();
          continue;
        }
        const int h = s.in_shape.height, w = s.in_shape.width;
        const int y = static_cast<int>(i % (h * w)) / w, x = static_cast<int>(i % (h * w)) % w;
        for (int oc = 0; oc < s.out_shape.channels; ++oc)
          for (int oy = 0; oy < h; ++oy)
            for (int ox = 0; ox < w; ++ox)
              if (std::abs(oy - y) <= 1 && std::abs(ox - x) <= 1) ++ops;
      }
    }
  }
  return ops;
}

TEST(SynapticOpsTest, MatchesExhaustiveRecount) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto f = RunRandomNet("6x8-3C3-4C3-2P-7FC-3o", seed);
    const auto ops = CountSynapticOps(f.trace, f.net);
    EXPECT_GT(ops, 0u);
    EXPECT_EQ(ops, RecountOps(f.trace, f.net));
  }
}

TEST(EnwsiTest, MatchesRecountAndScales) {
  const auto f = RunRandomNet("6x6-3C3-2P-8FC-2o", 5);
  const auto e = Enwsi(f.trace, f.net);
  ASSERT_EQ(e.size(), 2u);
  // Recompute W * x per step from the recorded inputs.
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t l = k == 0 ? 0 : 2;
    const Layer& layer = f.net.layer(l);
    double sum = 0.0;
    std::vector<double> out(layer.spec.out_shape.size());
    for (int t = 0; t < f.trace.steps; ++t) {
      LayerApply(layer, f.trace.LayerInput(f.net, l, t), out);
      for (double v : out) sum += v * v;
    }
    EXPECT_NEAR(e[k], std::sqrt(sum), 1e-9);
  }
  // Scaling the first layer scales its input drive; for the linear first
  // layer the norm is exactly homogeneous.
  Network scaled = f.net;
  for (double& w : scaled.mutable_layers()[0].weights) w *= -2.5;
  const auto fwd2 = Forward(scaled, f.trace.input, f.trace.steps);
  EXPECT_NEAR(Enwsi(fwd2.trace, scaled)[0], 2.5 * e[0], 1e-12 * e[0]);
}

TEST(EnwsiTest, ZeroWeightsGiveZero) {
  Network net = BuildNetwork(ParseArchitecture("4x4-2C3-5FC-2o"), NeuronConfig{}, 1);
  for (auto& l : net.mutable_layers()) std::fill(l.weights.begin(), l.weights.end(), 0.0);
  Rng enc = MakeStream(1);
  const auto in = PoissonEncode(std::vector<double>(16, 0.8), 5, enc);
  const auto fwd = Forward(net, in, 5);
  for (double v : Enwsi(fwd.trace, net)) EXPECT_EQ(v, 0.0);
}

TEST(SpikeActivityTest, CountsHiddenLayersOnly) {
  const auto f = RunRandomNet("5x5-2C3-6FC-2o", 2);
  const auto a = MeasureSpikeActivity(f.trace, f.net);
  std::uint64_t spikes = 0;
  for (std::size_t l : {0u, 1u})
    for (double v : f.trace.layers[l].output) spikes += v != 0.0;
  EXPECT_EQ(a.spikes, spikes);
  EXPECT_EQ(a.slots, (50u + 6u) * 12u);
  EXPECT_DOUBLE_EQ(a.overall, static_cast<double>(spikes) / a.slots);
}

TEST(EvaluateTest, SeverityZeroMatchesClean) {
  SynthOptions so;
  so.height = 8;
  so.width = 8;
  const Dataset data = SynthDataset(SynthKind::kBars, 12, 3, so);
  const Network net = BuildNetwork(ParseArchitecture("8x8-2C3-2P-6FC-2o"), NeuronConfig{}, 4);
  const std::vector<std::uint64_t> seeds = {1, 2};
  const auto clean = Evaluate(net, data, NoiseSpec::Clean(), 10, seeds);
  const auto zero = Evaluate(
      net, data, NoiseSpec::Make(NoiseKind::kGaussian, 0, NoiseScenario::kSpikeNoise), 10, seeds);
  EXPECT_EQ(clean.accuracy, zero.accuracy);
  EXPECT_EQ(clean.sse_test, zero.sse_test);
  EXPECT_EQ(clean.synaptic_ops, zero.synaptic_ops);
  EXPECT_EQ(clean.critical_freqs, zero.critical_freqs);
  EXPECT_EQ(clean.enwsi, zero.enwsi);
}

TEST(EvaluateTest, UntrainedTenClassNetIsNearChance) {
  Dataset data;
  data.height = 6;
  data.width = 6;
  data.num_classes = 10;
  Rng rng = MakeStream(77);
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < 36; ++p) data.images.push_back(UniformUnit(rng));
    data.labels.push_back(i % 10);
  }
  const Network net = BuildNetwork(ParseArchitecture("6x6-16FC-10o"), NeuronConfig{}, 8);
  const std::vector<std::uint64_t> seeds = {1};
  const auto m = Evaluate(net, data, NoiseSpec::Clean(), 8, seeds);
  // Binomial 4-sigma band around 0.1.
  EXPECT_NEAR(m.accuracy, 0.1, 4.0 * std::sqrt(0.09 / n));
  EXPECT_GE(m.accuracy, 0.0);
  EXPECT_LE(m.accuracy, 1.0);
  for (double f : m.critical_freqs) EXPECT_LE(f, 0.5);
}

TEST(EvaluateTest, EmptySeedsThrow) {
  SynthOptions so;
  so.height = 4;
  so.width = 4;
  const Dataset data = SynthDataset(SynthKind::kBars, 4, 1, so);
  const Network net = BuildNetwork(ParseArchitecture("4x4-2o"), NeuronConfig{}, 1);
  EXPECT_THROW(Evaluate(net, data, NoiseSpec::Clean(), 4, {}), InvalidArgument);
}

}  // namespace
}  // namespace snnlab
