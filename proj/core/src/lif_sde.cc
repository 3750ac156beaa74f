#include "snnlab/lif_sde.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "snnlab/error.h"

namespace snnlab {

namespace {

constexpr int kMinSegments = 20;

std::size_t WholeMultiple(double value, double unit, const char* what) {
  const double ratio = value / unit;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
    throw InvalidArgument(std::string(what) + " must be a whole multiple of the step");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

SdeTrajectory SimulateLifSde(const CoherenceParams& p, double dt, double duration, Rng& rng,
                             const SdeOptions& options) {
  if (!(p.D >= 0.0) || !std::isfinite(p.mu) || !(p.v_th > p.u_rest) || !(p.tau_r >= 0.0)) {
    throw InvalidArgument("invalid SDE parameters");
  }
  if (!(dt > 0.0) || dt > 1e-3) throw InvalidArgument("dt must be in (0, 1e-3]");
  if (!(duration > 0.0)) throw InvalidArgument("duration must be positive");
  const std::size_t per_bin = WholeMultiple(options.record_bin, dt, "record_bin");
  const std::size_t bins = static_cast<std::size_t>(std::floor(duration / options.record_bin));
  if (bins == 0) throw InvalidArgument("duration shorter than one record bin");

  SdeTrajectory out;
  out.dt = dt;
  out.bin = options.record_bin;
  out.duration = static_cast<double>(bins) * options.record_bin;
  out.stimulus.resize(bins);
  if (options.record_voltage) out.voltage.resize(bins);

  std::normal_distribution<double> normal;
  const double noise_scale = std::sqrt(2.0 * p.D * dt);
  const double bridge_scale = p.D > 0.0 ? 1.0 / (p.D * dt) : 0.0;
  const bool bridge = options.bridge_correction && p.D > 0.0;
  const std::size_t refractory_steps = static_cast<std::size_t>(std::llround(p.tau_r / dt));

  double v = options.initial_v;
  std::size_t hold = 0;
  std::size_t step = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    double noise_sum = 0.0;
    for (std::size_t k = 0; k < per_bin; ++k, ++step) {
      const double noise = noise_scale * normal(rng);
      noise_sum += noise;
      if (hold > 0) {
        --hold;
        continue;
      }
      const double drift = options.leak ? (-v + p.mu) : p.mu;
      const double next = v + drift * dt + noise;
      bool fire = next > p.v_th;
      if (!fire && bridge) {
        const double exponent = -(p.v_th - v) * (p.v_th - next) * bridge_scale;
        if (exponent > -40.0) fire = UniformUnit(rng) < std::exp(exponent);
      }
      if (fire) {
        out.spike_times.push_back(static_cast<double>(step + 1) * dt);
        v = p.u_rest;
        hold = refractory_steps;
      } else {
        v = next;
      }
    }
    out.stimulus[b] = noise_sum / options.record_bin;
    if (options.record_voltage) out.voltage[b] = v;
  }
  return out;
}

double MeanRate(const SdeTrajectory& trajectory) {
  return static_cast<double>(trajectory.spike_times.size()) / trajectory.duration;
}

std::vector<double> BinnedSpikeTrain(const SdeTrajectory& trajectory) {
  std::vector<double> x(trajectory.stimulus.size(), 0.0);
  for (double t : trajectory.spike_times) {
    // Spike times are step ends; a spike at the end of bin b belongs to b.
    auto b = static_cast<std::size_t>(std::ceil(t / trajectory.bin - 1e-9)) - 1;
    if (b < x.size()) x[b] += 1.0 / trajectory.bin;
  }
  return x;
}

SpectralEstimate EstimateSpectra(std::span<const double> x, std::span<const double> s,
                                 double bin, double segment_length) {
  if (x.size() != s.size()) throw DimensionError("signals differ in length");
  if (!(bin > 0.0)) throw InvalidArgument("bin must be positive");
  const auto m = static_cast<std::size_t>(std::llround(segment_length / bin));
  if (m < 4) throw InvalidArgument("segment shorter than four samples");
  const std::size_t segments = x.size() / m;
  if (segments < kMinSegments) {
    throw InvalidArgument("insufficient data: " + std::to_string(segments) +
                          " segments, need " + std::to_string(kMinSegments));
  }
  const double t_seg = static_cast<double>(m) * bin;
  const std::size_t bins = m / 2;  // k = 1 .. ceil(m/2) - 1 excludes Nyquist
  const std::size_t count = (m % 2 == 0) ? bins - 1 : bins;

  SpectralEstimate est;
  est.segments = static_cast<int>(segments);
  est.omega.resize(count);
  est.cross.assign(count, {0.0, 0.0});
  est.power_x.assign(count, 0.0);
  est.power_s.assign(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    est.omega[k] = 2.0 * std::numbers::pi * static_cast<double>(k + 1) / t_seg;
  }
  for (std::size_t seg = 0; seg < segments; ++seg) {
    const auto fx = RealDft(x.subspan(seg * m, m));
    const auto fs = RealDft(s.subspan(seg * m, m));
    for (std::size_t k = 0; k < count; ++k) {
      const std::complex<double> X = fx[k + 1] * bin;
      const std::complex<double> S = fs[k + 1] * bin;
      est.cross[k] += X * std::conj(S);
      est.power_x[k] += std::norm(X);
      est.power_s[k] += std::norm(S);
    }
  }
  const double norm = 1.0 / (static_cast<double>(segments) * t_seg);
  est.coherence.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    est.cross[k] *= norm;
    est.power_x[k] *= norm;
    est.power_s[k] *= norm;
    const double denom = est.power_x[k] * est.power_s[k];
    est.coherence[k] = denom > 0.0 ? std::norm(est.cross[k]) / denom : 0.0;
  }
  return est;
}

SpectralEstimate EstimateCoherenceMc(const SdeTrajectory& trajectory, double segment_length) {
  const std::vector<double> x = BinnedSpikeTrain(trajectory);
  return EstimateSpectra(x, trajectory.stimulus, trajectory.bin, segment_length);
}

}  // namespace snnlab
