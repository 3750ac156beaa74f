#include "snnlab/coherence.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "parallel.h"
#include "snnlab/error.h"
#include "snnlab/special_functions.h"

namespace snnlab {

CoherenceParams CoherenceParams::Make(double mu, double D) {
  CoherenceParams p;
  p.mu = mu;
  p.D = D;
  p.D_st = D;
  return p;
}

void CoherenceParams::Validate() const {
  if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
  if (!(D > 0.0) || !std::isfinite(D)) throw InvalidArgument("D must be positive");
  if (!(D_st >= 0.0) || !std::isfinite(D_st)) throw InvalidArgument("D_st must be non-negative");
  if (!(tau_r >= 0.0)) throw InvalidArgument("tau_r must be non-negative");
  if (!(v_th > u_rest)) throw InvalidArgument("v_th must exceed u_rest");
}

double CoherenceParams::Delta() const {
  return (u_rest * u_rest - v_th * v_th + 2.0 * mu * (v_th - u_rest)) / (4.0 * D);
}

double CoherenceParams::YThreshold() const { return (mu - v_th) / std::sqrt(D); }
double CoherenceParams::YReset() const { return (mu - u_rest) / std::sqrt(D); }

double FiringRate(const CoherenceParams& p) {
  p.Validate();
  const double lo = (p.mu - p.v_th) / std::sqrt(2.0 * p.D);
  const double hi = (p.mu - p.u_rest) / std::sqrt(2.0 * p.D);
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double z) { return Erfcx(z); }, lo, hi, 20, 1e-13, &error);
  if (!std::isfinite(integral) || error > 1e-9 * std::abs(integral)) {
    throw QuadratureError("firing-rate integral did not converge", error);
  }
  return 1.0 / (p.tau_r + std::sqrt(std::numbers::pi) * integral);
}

namespace {

// Everything the spectra share at one frequency.
struct Ingredients {
  double r0;
  double exp_delta;
  ParabolicCylinderPair at_threshold;  // {D_{iw-1}(y_T), D_{iw}(y_T)}
  ParabolicCylinderPair at_reset;      // {D_{iw-1}(y_R), D_{iw}(y_R)}
};

void CheckOmega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw InvalidArgument("frequency must be positive, got " + std::to_string(omega));
  }
}

Ingredients Gather(double omega, const CoherenceParams& p, double r0) {
  CheckOmega(omega);
  const std::complex<double> nu(0.0, omega);
  return {r0, std::exp(p.Delta()), ParabolicCylinderDPair(nu, p.YThreshold()),
          ParabolicCylinderDPair(nu, p.YReset())};
}

std::complex<double> SpikeDenominator(double omega, const CoherenceParams& p,
                                      const Ingredients& g) {
  const std::complex<double> refractory = std::exp(std::complex<double>(0.0, omega * p.tau_r));
  return g.at_threshold.upper - g.exp_delta * refractory * g.at_reset.upper;
}

std::complex<double> CrossFrom(double omega, const CoherenceParams& p, const Ingredients& g) {
  const std::complex<double> iw(0.0, omega);
  const std::complex<double> numerator = g.at_threshold.lower - g.exp_delta * g.at_reset.lower;
  return 2.0 * p.D_st / std::sqrt(p.D) * g.r0 * iw / (iw - 1.0) * numerator /
         SpikeDenominator(omega, p, g);
}

double PowerFrom(double omega, const CoherenceParams& p, const Ingredients& g) {
  const double numerator =
      std::norm(g.at_threshold.upper) - g.exp_delta * g.exp_delta * std::norm(g.at_reset.upper);
  return g.r0 * numerator / std::norm(SpikeDenominator(omega, p, g));
}

double ClosedFormFrom(double omega, const CoherenceParams& p, const Ingredients& g) {
  const double w2 = omega * omega;
  const double numerator = std::norm(g.at_threshold.lower - g.exp_delta * g.at_reset.lower);
  const double denominator =
      std::norm(g.at_threshold.upper) - g.exp_delta * g.exp_delta * std::norm(g.at_reset.upper);
  const double c = 2.0 * p.D_st / p.D * g.r0 * w2 / (1.0 + w2) * numerator / denominator;
  if (!(c >= -1e-12 && c <= 1.0 + 1e-9)) {
    throw InvalidArgument("coherence " + std::to_string(c) + " outside [0, 1] at omega " +
                          std::to_string(omega));
  }
  return c;
}

}  // namespace

std::complex<double> CrossSpectrum(double omega, const CoherenceParams& p) {
  const double r0 = FiringRate(p);
  return CrossFrom(omega, p, Gather(omega, p, r0));
}

double PowerSpectrum(double omega, const CoherenceParams& p) {
  const double r0 = FiringRate(p);
  return PowerFrom(omega, p, Gather(omega, p, r0));
}

double CrossSpectrumMagnitudeSquared(double omega, const CoherenceParams& p) {
  const double r0 = FiringRate(p);
  const Ingredients g = Gather(omega, p, r0);
  const double w2 = omega * omega;
  const double numerator = std::norm(g.at_threshold.lower - g.exp_delta * g.at_reset.lower);
  return 4.0 * p.D_st * p.D_st / p.D * r0 * r0 * w2 / (1.0 + w2) * numerator /
         std::norm(SpikeDenominator(omega, p, g));
}

double CoherenceFn(double omega, const CoherenceParams& p) {
  const double r0 = FiringRate(p);
  return ClosedFormFrom(omega, p, Gather(omega, p, r0));
}

double CoherenceFromSpectra(double omega, const CoherenceParams& p) {
  return std::norm(CrossSpectrum(omega, p)) / (PowerSpectrum(omega, p) * StimulusSpectrum(p));
}

CoherenceCurves EvaluateCoherenceCurves(std::span<const double> omega, const CoherenceParams& p,
                                        int threads) {
  for (std::size_t i = 0; i < omega.size(); ++i) {
    CheckOmega(omega[i]);
    if (i > 0 && !(omega[i] > omega[i - 1])) {
      throw InvalidArgument("frequency grid must be strictly increasing");
    }
  }
  const double r0 = FiringRate(p);
  const std::size_t n = omega.size();
  CoherenceCurves out;
  out.omega.assign(omega.begin(), omega.end());
  out.coherence.resize(n);
  out.cross.resize(n);
  out.power.resize(n);
  internal::ParallelFor(n, threads, [&](std::size_t i) {
    const Ingredients g = Gather(omega[i], p, r0);
    out.coherence[i] = ClosedFormFrom(omega[i], p, g);
    out.cross[i] = CrossFrom(omega[i], p, g);
    out.power[i] = PowerFrom(omega[i], p, g);
  });
  return out;
}

SpectrumCurve CoherenceCurve(std::span<const double> omega, const CoherenceParams& p,
                             int threads) {
  CoherenceCurves curves = EvaluateCoherenceCurves(omega, p, threads);
  return {std::move(curves.omega), std::move(curves.coherence)};
}

std::vector<double> LogGrid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw InvalidArgument("log grid needs 0 < lo < hi and at least two points");
  }
  std::vector<double> grid(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = lo * std::exp(step * i);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace snnlab
