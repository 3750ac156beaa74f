#ifndef SNNLAB_LIF_SDE_H_
#define SNNLAB_LIF_SDE_H_

#include <complex>
#include <span>
#include <vector>

#include "snnlab/coherence.h"
#include "snnlab/encoding.h"
#include "snnlab/spectral.h"

namespace snnlab {

struct SdeOptions {
  bool leak = true;  // false drops the -v term (perfect integrator)
  // Between grid points the path may cross threshold and come back. When set,
  // such crossings fire with the Brownian-bridge probability
  // exp(-(v_th - v_n)(v_th - v_{n+1}) / (D dt)).
  bool bridge_correction = true;
  double record_bin = 0.01;  // stimulus and voltage are stored per bin
  double initial_v = 0.0;
  bool record_voltage = false;
};

struct SdeTrajectory {
  double dt = 0.0;
  double duration = 0.0;
  double bin = 0.0;
  std::vector<double> spike_times;
  std::vector<double> stimulus;  // bin averages of sqrt(2 D) xi(t)
  std::vector<double> voltage;   // v at the end of each bin, if recorded
};

// Euler-Maruyama integration of dv = (-v + mu) dt + sqrt(2 D dt) N(0, 1),
// resetting to u_rest for tau_r after each spike. Requires dt <= 1e-3 and
// record_bin a whole multiple of dt.
SdeTrajectory SimulateLifSde(const CoherenceParams& p, double dt, double duration, Rng& rng,
                             const SdeOptions& options = {});

double MeanRate(const SdeTrajectory& trajectory);

// Spike counts per bin divided by the bin width.
std::vector<double> BinnedSpikeTrain(const SdeTrajectory& trajectory);

// Segment-averaged spectral estimates of output x and stimulus s, both
// sampled at interval `bin`. Segments are non-overlapping with a
// rectangular window; spectra are |X|^2 / T_seg with X = sum_j x_j bin
// exp(-i omega t_j). The DC bin and Nyquist bin are dropped, so omega runs
// over 2 pi k / T_seg for k = 1 .. M/2 - 1.
struct SpectralEstimate {
  std::vector<double> omega;
  std::vector<std::complex<double>> cross;  // <X S*> / T_seg
  std::vector<double> power_x;
  std::vector<double> power_s;
  std::vector<double> coherence;
  int segments = 0;

  SpectrumCurve CoherenceCurve() const { return {omega, coherence}; }
};

// Throws InvalidArgument when fewer than 20 whole segments fit.
SpectralEstimate EstimateSpectra(std::span<const double> x, std::span<const double> s,
                                 double bin, double segment_length);

SpectralEstimate EstimateCoherenceMc(const SdeTrajectory& trajectory, double segment_length);

}  // namespace snnlab

#endif  // SNNLAB_LIF_SDE_H_
