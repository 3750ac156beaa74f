#ifndef SNNLAB_ENCODING_H_
#define SNNLAB_ENCODING_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace snnlab {

using Rng = std::mt19937_64;

// Independent, reproducible stream for (seed, a, b), e.g. (seed, epoch,
// sample index). Streams do not depend on scheduling order.
Rng MakeStream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0);

// Uniform draw in [0, 1) with 53 random bits.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

enum class NoiseKind { kNone, kGaussian, kImpulse };
enum class NoiseScenario { kPixelNoise = 1, kSpikeNoise = 2 };

std::string ToString(NoiseKind kind);
std::string ToString(NoiseScenario scenario);
NoiseKind ParseNoiseKind(const std::string& text);
NoiseScenario ParseNoiseScenario(const std::string& text);

// Per-severity-level noise magnitudes.
struct NoiseScales {
  double gaussian_sigma_per_level = 0.05;
  double impulse_prob_per_level = 0.02;
  double impulse_amplitude = 1.0;

  bool operator==(const NoiseScales&) const = default;
};

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  int severity = 0;  // 0..8, zero exactly when kind is kNone
  NoiseScenario scenario = NoiseScenario::kPixelNoise;
  NoiseScales scales;

  static NoiseSpec Clean() { return NoiseSpec{}; }
  static NoiseSpec Make(NoiseKind kind, int severity, NoiseScenario scenario);

  bool is_clean() const { return kind == NoiseKind::kNone; }
  void Validate() const;
};

inline constexpr int kMaxSeverity = 8;

// Time x unit array of spike values, row-major by time-step.
class SpikeTensor {
 public:
  SpikeTensor() = default;
  SpikeTensor(int steps, std::size_t units, bool binary)
      : steps_(steps), units_(units), binary_(binary),
        values_(static_cast<std::size_t>(steps) * units, 0.0) {}

  int steps() const { return steps_; }
  std::size_t units() const { return units_; }
  bool binary() const { return binary_; }

  std::span<const double> step(int t) const {
    return {values_.data() + static_cast<std::size_t>(t) * units_, units_};
  }
  std::span<double> step(int t) {
    return {values_.data() + static_cast<std::size_t>(t) * units_, units_};
  }
  double at(int t, std::size_t i) const {
    return values_[static_cast<std::size_t>(t) * units_ + i];
  }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const SpikeTensor&) const = default;

 private:
  int steps_ = 0;
  std::size_t units_ = 0;
  bool binary_ = true;
  std::vector<double> values_;
};

// Zero-mean, max-abs-one rescaling of one image. A constant image maps to
// all zeros.
std::vector<double> Normalize(std::span<const double> pixels);

// Rate coding of normalized pixels: at every step unit i fires with
// probability |p_i| and the spike carries sign(p_i).
SpikeTensor PoissonEncode(std::span<const double> pixels, int steps, Rng& rng);

// One draw of the configured noise source. kind must not be kNone.
double SampleNoise(const NoiseSpec& spec, Rng& rng);

// Noisy rate coding. Pixel-noise scenario: noise is added to every pixel at
// every step before the comparison, the output stays binary. Spike-noise
// scenario: clean spikes are drawn first (same draws as PoissonEncode) and
// noise is added to every resulting entry; the output is real-valued.
SpikeTensor EncodeNoisy(std::span<const double> pixels, int steps,
                        const NoiseSpec& spec, Rng& rng);

}  // namespace snnlab

#endif  // SNNLAB_ENCODING_H_
