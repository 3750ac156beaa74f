#include "snnlab/encoding.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "snnlab/error.h"

namespace snnlab {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void CheckSteps(int steps) {
  if (steps < 1) throw InvalidArgument("number of time-steps must be >= 1");
}

}  // namespace

Rng MakeStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ a);
  h = SplitMix64(h ^ (b + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(b)};
  return Rng(seq);
}

std::string ToString(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kGaussian: return "gaussian";
    case NoiseKind::kImpulse: return "impulse";
  }
  return "none";
}

std::string ToString(NoiseScenario scenario) {
  return scenario == NoiseScenario::kPixelNoise ? "1" : "2";
}

NoiseKind ParseNoiseKind(const std::string& text) {
  if (text == "none") return NoiseKind::kNone;
  if (text == "gaussian") return NoiseKind::kGaussian;
  if (text == "impulse") return NoiseKind::kImpulse;
  throw ConfigError("unknown noise kind '" + text + "'");
}

NoiseScenario ParseNoiseScenario(const std::string& text) {
  if (text == "1" || text == "pixel") return NoiseScenario::kPixelNoise;
  if (text == "2" || text == "spike") return NoiseScenario::kSpikeNoise;
  throw ConfigError("unknown noise scenario '" + text + "'");
}

NoiseSpec NoiseSpec::Make(NoiseKind kind, int severity, NoiseScenario scenario) {
  NoiseSpec spec;
  spec.kind = severity == 0 ? NoiseKind::kNone : kind;
  spec.severity = spec.kind == NoiseKind::kNone ? 0 : severity;
  spec.scenario = scenario;
  spec.Validate();
  return spec;
}

void NoiseSpec::Validate() const {
  if (severity < 0 || severity > kMaxSeverity) {
    throw InvalidArgument("noise severity must lie in [0, 8]");
  }
  if ((severity == 0) != (kind == NoiseKind::kNone)) {
    throw InvalidArgument("severity 0 must coincide with noise kind 'none'");
  }
}

std::vector<double> Normalize(std::span<const double> pixels) {
  if (pixels.empty()) throw InvalidArgument("Normalize: empty image");
  const double mean =
      std::accumulate(pixels.begin(), pixels.end(), 0.0) / pixels.size();
  std::vector<double> out(pixels.size());
  double max_abs = 0.0;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    out[i] = pixels[i] - mean;
    max_abs = std::max(max_abs, std::abs(out[i]));
  }
  if (max_abs == 0.0) return std::vector<double>(pixels.size(), 0.0);
  for (double& v : out) v /= max_abs;
  // Division can reintroduce a tiny mean offset; remove it once more.
  const double residual =
      std::accumulate(out.begin(), out.end(), 0.0) / out.size();
  for (double& v : out) v -= residual;
  return out;
}

SpikeTensor PoissonEncode(std::span<const double> pixels, int steps, Rng& rng) {
  CheckSteps(steps);
  SpikeTensor out(steps, pixels.size(), /*binary=*/true);
  for (int t = 0; t < steps; ++t) {
    auto row = out.step(t);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const double x = UniformUnit(rng);
      if (std::abs(pixels[i]) > x) row[i] = Sign(pixels[i]);
    }
  }
  return out;
}

double SampleNoise(const NoiseSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case NoiseKind::kGaussian: {
      std::normal_distribution<double> normal(
          0.0, spec.scales.gaussian_sigma_per_level * spec.severity);
      return normal(rng);
    }
    case NoiseKind::kImpulse: {
      const double p = spec.scales.impulse_prob_per_level * spec.severity;
      if (UniformUnit(rng) >= p) return 0.0;
      return UniformUnit(rng) < 0.5 ? -spec.scales.impulse_amplitude
                                    : spec.scales.impulse_amplitude;
    }
    case NoiseKind::kNone:
      break;
  }
  throw InvalidArgument("SampleNoise: noise kind 'none' has no distribution");
}

SpikeTensor EncodeNoisy(std::span<const double> pixels, int steps,
                        const NoiseSpec& spec, Rng& rng) {
  spec.Validate();
  if (spec.is_clean()) return PoissonEncode(pixels, steps, rng);
  CheckSteps(steps);

  if (spec.scenario == NoiseScenario::kPixelNoise) {
    SpikeTensor out(steps, pixels.size(), /*binary=*/true);
    for (int t = 0; t < steps; ++t) {
      auto row = out.step(t);
      for (std::size_t i = 0; i < pixels.size(); ++i) {
        const double noisy = pixels[i] + SampleNoise(spec, rng);
        const double x = UniformUnit(rng);
        if (std::abs(noisy) > x) row[i] = Sign(noisy);
      }
    }
    return out;
  }

  const SpikeTensor clean = PoissonEncode(pixels, steps, rng);
  SpikeTensor out(steps, pixels.size(), /*binary=*/false);
  for (int t = 0; t < steps; ++t) {
    auto src = clean.step(t);
    auto dst = out.step(t);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      dst[i] = src[i] + SampleNoise(spec, rng);
    }
  }
  return out;
}

}  // namespace snnlab
