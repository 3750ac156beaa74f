#include "snnlab/network.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "snnlab/architecture.h"
#include "snnlab/error.h"

namespace snnlab {
namespace {

TEST(ArchitectureTest, ParsesShapes) {
  const Architecture a = ParseArchitecture("16x16-8C3-2P-64FC-2o");
  ASSERT_EQ(a.layers.size(), 4u);
  EXPECT_EQ(a.input, (Shape{1, 16, 16}));
  EXPECT_EQ(a.layers[0].out_shape, (Shape{8, 16, 16}));
  EXPECT_EQ(a.layers[1].out_shape, (Shape{8, 8, 8}));
  EXPECT_EQ(a.layers[2].in_shape.size(), 512u);
  EXPECT_EQ(a.layers[3].out_shape.size(), 2u);
  EXPECT_EQ(a.num_classes(), 2);
  EXPECT_EQ(a.layers[0].weight_count(), 8u * 9u);
  EXPECT_EQ(a.layers[2].weight_count(), 64u * 512u);
}

TEST(ArchitectureTest, AcceptsUnicodeTimesAndStrideToken) {
  const Architecture a = ParseArchitecture("28\xC3\x97" "28-12C3-2s-10o");
  EXPECT_EQ(a.layers[1].kind, LayerKind::kAvgPool2x2);
  EXPECT_EQ(a.layers[1].out_shape, (Shape{12, 14, 14}));
}

TEST(ArchitectureTest, FormatRoundTrip) {
  for (const char* text : {"16x16-8C3-2P-64FC-2o", "32x32x3-4C3-4C3-2P-10FC-10o", "8x8-10o"}) {
    const Architecture a = ParseArchitecture(text);
    EXPECT_EQ(ParseArchitecture(FormatArchitecture(a)), a) << text;
  }
}

TEST(ArchitectureTest, RejectsMalformed) {
  EXPECT_THROW(ParseArchitecture(""), ConfigError);
  EXPECT_THROW(ParseArchitecture("16x16-8C5-2o"), ConfigError);
  EXPECT_THROW(ParseArchitecture("16x16-2o-4FC"), ConfigError);
  EXPECT_THROW(ParseArchitecture("16x16-8C3"), ConfigError);
  EXPECT_THROW(ParseArchitecture("7x7-2P-2o"), DimensionError);
}

// Direct 3x3 cross-correlation with zero padding.
std::vector<double> NaiveConv(const LayerSpec& s, const std::vector<double>& w,
                              const std::vector<double>& in) {
  const int ic = s.in_shape.channels, oc = s.out_shape.channels;
  const int h = s.in_shape.height, wd = s.in_shape.width;
  std::vector<double> out(s.out_shape.size(), 0.0);
  for (int o = 0; o < oc; ++o)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < wd; ++x) {
        double acc = 0.0;
        for (int c = 0; c < ic; ++c)
          for (int ky = 0; ky < 3; ++ky)
            for (int kx = 0; kx < 3; ++kx) {
              const int yy = y + ky - 1, xx = x + kx - 1;
              if (yy < 0 || yy >= h || xx < 0 || xx >= wd) continue;
              acc += w[((o * ic + c) * 3 + ky) * 3 + kx] * in[(c * h + yy) * wd + xx];
            }
        out[(o * h + y) * wd + x] = acc;
      }
  return out;
}

TEST(LayerApplyTest, ConvMatchesDirectCorrelation) {
  const Architecture a = ParseArchitecture("5x6x2-3C3-2o");
  const Network net = BuildNetwork(a, NeuronConfig{}, 4);
  const Layer& conv = net.layer(0);
  Rng rng = MakeStream(8);
  std::vector<double> in(conv.spec.in_shape.size());
  for (double& v : in) v = UniformUnit(rng) < 0.4 ? UniformUnit(rng) - 0.5 : 0.0;
  std::vector<double> out(conv.spec.out_shape.size());
  LayerApply(conv, in, out);
  const auto ref = NaiveConv(conv.spec, conv.weights, in);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], ref[i], 1e-14);
}

TEST(LayerApplyTest, PoolAveragesBlocks) {
  const Architecture a = ParseArchitecture("4x4-2P-2o");
  const Network net = BuildNetwork(a, NeuronConfig{}, 1);
  std::vector<double> in(16);
  for (int i = 0; i < 16; ++i) in[i] = i;
  std::vector<double> out(4);
  LayerApply(net.layer(0), in, out);
  EXPECT_EQ(out, (std::vector<double>{2.5, 4.5, 10.5, 12.5}));
}

TEST(LayerApplyTest, DenseMatchesMatrixProduct) {
  const Network net = BuildNetwork(ParseArchitecture("2x3-4o"), NeuronConfig{}, 2);
  const Layer& l = net.layer(0);
  const std::vector<double> in = {1.0, 0.0, -1.0, 0.5, 0.0, 2.0};
  std::vector<double> out(4);
  LayerApply(l, in, out);
  for (int o = 0; o < 4; ++o) {
    double ref = 0.0;
    for (int i = 0; i < 6; ++i) ref += l.weights[o * 6 + i] * in[i];
    EXPECT_NEAR(out[o], ref, 1e-15);
  }
}

TEST(LayerApplyTest, SizeMismatchThrows) {
  const Network net = BuildNetwork(ParseArchitecture("2x3-4o"), NeuronConfig{}, 2);
  std::vector<double> in(5), out(4);
  EXPECT_THROW(LayerApply(net.layer(0), in, out), DimensionError);
}

TEST(BuildNetworkTest, InitIsBoundedAndDeterministic) {
  const Architecture a = ParseArchitecture("8x8-4C3-2P-16FC-3o");
  const Network n1 = BuildNetwork(a, NeuronConfig{}, 5);
  const Network n2 = BuildNetwork(a, NeuronConfig{}, 5);
  const Network n3 = BuildNetwork(a, NeuronConfig{}, 6);
  EXPECT_EQ(n1, n2);
  EXPECT_NE(n1.layer(0).weights, n3.layer(0).weights);
  for (const Layer& l : n1.layers()) {
    if (!l.spec.has_weights()) continue;
    const double bound = 1.0 / std::sqrt(static_cast<double>(l.spec.fan_in()));
    for (double w : l.weights) EXPECT_LE(std::abs(w), bound);
  }
  EXPECT_EQ(n1.architecture(), a);
}

// Independent re-simulation of a conv-pool-fc-out stack.
TEST(ForwardTest, MatchesReferenceSimulation) {
  const Architecture a = ParseArchitecture("6x6-2C3-2P-5FC-3o");
  NeuronConfig cfg = NeuronConfig::Leaky(7.0);
  cfg.v_th = 0.6;
  cfg.u_rest = -0.1;
  Network net = BuildNetwork(a, cfg, 3);
  for (auto& l : net.mutable_layers())
    for (double& w : l.weights) w *= 3.0;
  const int steps = 12;
  Rng rng = MakeStream(21);
  std::vector<double> px(36);
  for (double& p : px) p = UniformUnit(rng);
  Rng enc = MakeStream(22);
  const SpikeTensor input = PoissonEncode(Normalize(px), steps, enc);
  const ForwardResult res = Forward(net, input, steps);

  const double d = std::exp(-1.0 / 7.0);
  std::vector<double> u1(72, 0.0), u3(5, 0.0), u4(3, 0.0);
  int spikes = 0;
  for (int t = 0; t < steps; ++t) {
    std::vector<double> x(input.step(t).begin(), input.step(t).end());
    auto a1 = NaiveConv(net.layer(0).spec, net.layer(0).weights, x);
    std::vector<double> s1(72, 0.0);
    for (int i = 0; i < 72; ++i) {
      const double pre = u1[i] + a1[i];
      s1[i] = pre > 0.6 ? 1.0 : 0.0;
      u1[i] = s1[i] > 0 ? -0.1 : pre * d;
      spikes += static_cast<int>(s1[i]);
    }
    std::vector<double> p2(18);
    for (int c = 0; c < 2; ++c)
      for (int y = 0; y < 3; ++y)
        for (int xx = 0; xx < 3; ++xx) {
          const int b = c * 36 + 2 * y * 6 + 2 * xx;
          p2[c * 9 + y * 3 + xx] = 0.25 * (s1[b] + s1[b + 1] + s1[b + 6] + s1[b + 7]);
        }
    std::vector<double> s3(5, 0.0);
    for (int o = 0; o < 5; ++o) {
      double acc = 0.0;
      for (int i = 0; i < 18; ++i) acc += net.layer(2).weights[o * 18 + i] * p2[i];
      const double pre = u3[o] + acc;
      s3[o] = pre > 0.6 ? 1.0 : 0.0;
      u3[o] = s3[o] > 0 ? -0.1 : pre * d;
      EXPECT_EQ(s3[o], res.trace.layers[2].output[t * 5 + o]) << "t=" << t;
    }
    for (int o = 0; o < 3; ++o) {
      double acc = 0.0;
      for (int i = 0; i < 5; ++i) acc += net.layer(3).weights[o * 5 + i] * s3[i];
      u4[o] = d * u4[o] + acc;
    }
  }
  EXPECT_GT(spikes, 0);
  for (int o = 0; o < 3; ++o) EXPECT_NEAR(res.prediction[o], u4[o] / steps, 1e-12);
}

TEST(ForwardTest, RejectsWrongInput) {
  const Network net = BuildNetwork(ParseArchitecture("2x2-3o"), NeuronConfig{}, 1);
  SpikeTensor bad(5, 3, true);
  EXPECT_THROW(Forward(net, bad, 5), DimensionError);
  SpikeTensor ok(5, 4, true);
  EXPECT_THROW(Forward(net, ok, 4), DimensionError);
}

}  // namespace
}  // namespace snnlab
