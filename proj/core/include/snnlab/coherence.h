#ifndef SNNLAB_COHERENCE_H_
#define SNNLAB_COHERENCE_H_

#include <complex>
#include <span>
#include <vector>

#include "snnlab/spectral.h"

namespace snnlab {

// White-noise driven LIF neuron in units of the membrane time constant:
//   dv/dt = -v + mu + sqrt(2 D) xi(t),
// firing at v_th and resetting to u_rest after a refractory period tau_r.
// The stimulus is the whole noise term, so D_st equals D.
struct CoherenceParams {
  double mu = 0.8;
  double D = 0.1;
  double D_st = 0.1;
  double tau_r = 0.0;
  double v_th = 1.0;
  double u_rest = 0.0;

  static CoherenceParams Make(double mu, double D);
  void Validate() const;

  // (U_rest^2 - V_th^2 + 2 mu (V_th - U_rest)) / (4 D).
  double Delta() const;
  double YThreshold() const;  // (mu - v_th) / sqrt(D)
  double YReset() const;      // (mu - u_rest) / sqrt(D)
};

// Stationary rate r0 = 1 / (tau_r + sqrt(pi) int erfcx(z) dz) over
// [(mu - v_th) / sqrt(2D), (mu - u_rest) / sqrt(2D)].
double FiringRate(const CoherenceParams& p);

// Linear-response cross-spectrum between output spike train and stimulus.
std::complex<double> CrossSpectrum(double omega, const CoherenceParams& p);

// Power spectrum of the output spike train.
double PowerSpectrum(double omega, const CoherenceParams& p);

// Stimulus power spectrum, 2 D_st.
inline double StimulusSpectrum(const CoherenceParams& p) { return 2.0 * p.D_st; }

// Closed-form coherence
//   C = (2 D_st / D) r0 w^2 / (1 + w^2) |N|^2 / (|D_iw(y_T)|^2 - e^{2 Delta} |D_iw(y_R)|^2)
// with N = D_{iw-1}(y_T) - e^Delta D_{iw-1}(y_R). Throws InvalidArgument
// when the value falls outside [0, 1] by more than rounding, which signals
// a special-function failure.
double CoherenceFn(double omega, const CoherenceParams& p);

// |CrossSpectrum|^2 / (PowerSpectrum * StimulusSpectrum), kept as an
// independent route for checking CoherenceFn.
double CoherenceFromSpectra(double omega, const CoherenceParams& p);

// The squared cross-spectrum magnitude written out directly, without
// forming the complex ratio.
double CrossSpectrumMagnitudeSquared(double omega, const CoherenceParams& p);

// All four curves on one frequency grid (omega > 0, strictly increasing).
struct CoherenceCurves {
  std::vector<double> omega;
  std::vector<double> coherence;
  std::vector<std::complex<double>> cross;
  std::vector<double> power;
};
CoherenceCurves EvaluateCoherenceCurves(std::span<const double> omega,
                                        const CoherenceParams& p, int threads = 0);

SpectrumCurve CoherenceCurve(std::span<const double> omega, const CoherenceParams& p,
                             int threads = 0);

// n points spaced logarithmically from lo to hi inclusive.
std::vector<double> LogGrid(double lo, double hi, int n);

}  // namespace snnlab

#endif  // SNNLAB_COHERENCE_H_
