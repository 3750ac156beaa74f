#ifndef SNNLAB_SPECTRAL_H_
#define SNNLAB_SPECTRAL_H_

#include <complex>
#include <span>
#include <vector>

namespace snnlab {

// Frequencies paired with real spectral values. Curves produced from
// time-step signals use normalized frequency k/N in [0, 0.5] and include the
// DC bin; curves from the continuous-time coherence machinery use angular
// frequency omega > 0.
struct SpectrumCurve {
  std::vector<double> frequencies;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

// Bins 0..N/2 of the discrete Fourier transform sum_t x[t] exp(-2 pi i k t / N).
std::vector<std::complex<double>> RealDft(std::span<const double> signal);

}  // namespace snnlab

#endif  // SNNLAB_SPECTRAL_H_
