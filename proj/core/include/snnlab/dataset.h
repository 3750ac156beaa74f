#ifndef SNNLAB_DATASET_H_
#define SNNLAB_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace snnlab {

// Images in [0,1], stored sample x H x W x C (channels last), one integer
// label per sample.
struct Dataset {
  int height = 0;
  int width = 0;
  int channels = 1;
  int num_classes = 0;
  std::vector<double> images;
  std::vector<int> labels;
  std::string split = "train";

  std::size_t size() const { return labels.size(); }
  std::size_t image_size() const {
    return static_cast<std::size_t>(height) * width * channels;
  }
  std::span<const double> image(std::size_t i) const {
    return {images.data() + i * image_size(), image_size()};
  }
  // Image i re-laid out channels-first (C x H x W), the network's layout.
  std::vector<double> ChannelsFirst(std::size_t i) const;

  // Throws InvalidArgument when shapes or labels are inconsistent.
  void Validate() const;

  bool operator==(const Dataset&) const = default;
};

enum class SynthKind { kTwoGaussians, kBars };

SynthKind ParseSynthKind(const std::string& text);
std::string ToString(SynthKind kind);

struct SynthOptions {
  int height = 16;
  int width = 16;
  // Std of additive pixel noise (clamped to [0,1] afterwards).
  double pixel_noise = 0.0;
  // Std of the blob centre around its class location, as a fraction of the
  // image side (kTwoGaussians only).
  double center_jitter = 0.1;

  bool operator==(const SynthOptions&) const = default;
};

// Deterministic two-class toy sets. kBars: one horizontal (class 0) or
// vertical (class 1) bar of width 2 at a random offset. kTwoGaussians: a
// Gaussian blob whose centre is drawn around a class-specific location.
// Labels alternate so classes are balanced within one sample.
Dataset SynthDataset(SynthKind kind, std::size_t n, std::uint64_t seed,
                     const SynthOptions& options = {});

// Parses IDX image and label files. Pixel bytes are scaled by 1/255.
// Labels may be an empty path, in which case all labels are zero.
Dataset LoadIdxDataset(const std::string& images_path, const std::string& labels_path);

}  // namespace snnlab

#endif  // SNNLAB_DATASET_H_
