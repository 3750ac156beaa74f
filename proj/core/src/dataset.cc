#include "snnlab/dataset.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "snnlab/encoding.h"
#include "snnlab/error.h"

namespace snnlab {

std::vector<double> Dataset::ChannelsFirst(std::size_t i) const {
  const auto src = image(i);
  std::vector<double> out(src.size());
  const std::size_t plane = static_cast<std::size_t>(height) * width;
  for (std::size_t p = 0; p < plane; ++p) {
    for (int c = 0; c < channels; ++c) out[c * plane + p] = src[p * channels + c];
  }
  return out;
}

void Dataset::Validate() const {
  if (height <= 0 || width <= 0 || channels <= 0) {
    throw InvalidArgument("dataset image dimensions must be positive");
  }
  if (images.size() != labels.size() * image_size()) {
    throw InvalidArgument("dataset holds " + std::to_string(images.size()) +
                          " pixel values for " + std::to_string(labels.size()) +
                          " samples of size " + std::to_string(image_size()));
  }
  for (int label : labels) {
    if (label < 0 || label >= num_classes) {
      throw InvalidArgument("label " + std::to_string(label) + " outside [0, " +
                            std::to_string(num_classes) + ")");
    }
  }
}

SynthKind ParseSynthKind(const std::string& text) {
  if (text == "bars") return SynthKind::kBars;
  if (text == "two_gaussians" || text == "twogaussians") return SynthKind::kTwoGaussians;
  throw ConfigError("unknown synthetic dataset '" + text + "'");
}

std::string ToString(SynthKind kind) {
  return kind == SynthKind::kBars ? "bars" : "two_gaussians";
}

Dataset SynthDataset(SynthKind kind, std::size_t n, std::uint64_t seed,
                     const SynthOptions& options) {
  if (n < 2) throw InvalidArgument("SynthDataset needs n >= 2");
  if (options.height < 4 || options.width < 4) {
    throw InvalidArgument("SynthDataset images must be at least 4x4");
  }
  Dataset ds;
  ds.height = options.height;
  ds.width = options.width;
  ds.channels = 1;
  ds.num_classes = 2;
  ds.images.assign(n * ds.image_size(), 0.0);
  ds.labels.resize(n);

  Rng rng = MakeStream(seed, 0x5e7);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int h = ds.height;
  const int w = ds.width;
  for (std::size_t s = 0; s < n; ++s) {
    const int label = static_cast<int>(s % 2);
    ds.labels[s] = label;
    double* img = ds.images.data() + s * ds.image_size();
    if (kind == SynthKind::kBars) {
      const int extent = label == 0 ? h : w;
      const int offset = 1 + static_cast<int>(UniformUnit(rng) * (extent - 3));
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const int coord = label == 0 ? y : x;
          if (coord == offset || coord == offset + 1) img[y * w + x] = 1.0;
        }
      }
    } else {
      const double cy0 = label == 0 ? 0.3 * h : 0.7 * h;
      const double cx0 = label == 0 ? 0.3 * w : 0.7 * w;
      const double cy = cy0 + options.center_jitter * h * normal(rng);
      const double cx = cx0 + options.center_jitter * w * normal(rng);
      const double radius = 0.15 * std::min(h, w);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double d2 = (y - cy) * (y - cy) + (x - cx) * (x - cx);
          img[y * w + x] = std::exp(-0.5 * d2 / (radius * radius));
        }
      }
    }
    if (options.pixel_noise > 0.0) {
      for (std::size_t p = 0; p < ds.image_size(); ++p) {
        img[p] = std::clamp(img[p] + options.pixel_noise * normal(rng), 0.0, 1.0);
      }
    }
  }
  return ds;
}

}  // namespace snnlab
