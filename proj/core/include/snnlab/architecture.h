#ifndef SNNLAB_ARCHITECTURE_H_
#define SNNLAB_ARCHITECTURE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace snnlab {

struct Shape {
  int channels = 1;
  int height = 1;
  int width = 1;

  std::size_t size() const {
    return static_cast<std::size_t>(channels) * height * width;
  }
  bool operator==(const Shape&) const = default;
  std::string ToString() const;
};

enum class LayerKind { kConv3x3, kAvgPool2x2, kFullyConnected, kOutput };

std::string ToString(LayerKind kind);

struct LayerSpec {
  LayerKind kind = LayerKind::kFullyConnected;
  Shape in_shape;
  Shape out_shape;

  bool has_weights() const { return kind != LayerKind::kAvgPool2x2; }
  // Conv and FC layers hold spiking units; pooling and output do not.
  bool is_spiking() const {
    return kind == LayerKind::kConv3x3 || kind == LayerKind::kFullyConnected;
  }
  // Conv: out_c x in_c x 3 x 3. Dense: out x in. Pooling: 0.
  std::size_t weight_count() const;
  std::size_t fan_in() const;

  bool operator==(const LayerSpec&) const = default;
};

// Layer graph described by strings such as "16x16-8C3-2P-64FC-2o".
//   <H>x<W>[x<C>]  input (the unicode multiplication sign is accepted too)
//   <n>C3          3x3 convolution with n output maps, stride 1, padding 1
//   2P or 2s       2x2 average pooling
//   <n>FC          fully connected spiking layer
//   <n>o           non-spiking output layer, must be last
struct Architecture {
  Shape input;
  std::vector<LayerSpec> layers;

  int num_classes() const { return layers.empty() ? 0 : layers.back().out_shape.size(); }
  bool operator==(const Architecture&) const = default;
};

// Throws ConfigError on malformed tokens and DimensionError when layer
// shapes do not fit (e.g. pooling an odd-sized map).
Architecture ParseArchitecture(std::string_view text);

// Canonical ASCII form; ParseArchitecture(FormatArchitecture(a)) == a.
std::string FormatArchitecture(const Architecture& arch);

// Throws DimensionError/ConfigError unless shapes chain and exactly one
// output layer terminates the list.
void ValidateLayerChain(const std::vector<LayerSpec>& layers);

}  // namespace snnlab

#endif  // SNNLAB_ARCHITECTURE_H_
