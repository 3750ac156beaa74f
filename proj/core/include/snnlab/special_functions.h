#ifndef SNNLAB_SPECIAL_FUNCTIONS_H_
#define SNNLAB_SPECIAL_FUNCTIONS_H_

#include <complex>

namespace snnlab {

// log Gamma(z) for complex z off the non-positive integers (Lanczos, g = 7,
// with reflection for Re z < 1/2). Principal branch is not guaranteed; only
// exp(LogGamma(z)) is meaningful.
std::complex<double> LogGamma(std::complex<double> z);
std::complex<double> Gamma(std::complex<double> z);

// exp(x^2) erfc(x) without overflow for large positive x.
double Erfcx(double x);

// Parabolic cylinder function D_nu(z) for complex order and real argument.
// Orders with Re nu < 0 come from the integral
//   D_nu(z) = exp(-z^2/4) / Gamma(-nu) * int_0^inf exp(-z t - t^2/2) t^(-nu-1) dt,
// evaluated in extended precision; other orders use the upward recurrence
// D_{nu+1}(z) = z D_nu(z) - nu D_{nu-1}(z).
// Throws QuadratureError when the requested order needs more precision than
// the kernels carry (|Im nu| beyond ~120).
std::complex<double> ParabolicCylinderD(std::complex<double> nu, double z);

// {D_{nu-1}(z), D_nu(z)} from a single quadrature.
struct ParabolicCylinderPair {
  std::complex<double> lower;
  std::complex<double> upper;
};
ParabolicCylinderPair ParabolicCylinderDPair(std::complex<double> nu, double z);

// Raw integral J(nu, z) = int_0^inf exp(-z t - t^2/2) t^(-nu-1) dt for
// Re nu < 0, exposed for testing the quadrature in isolation.
std::complex<double> ParabolicCylinderIntegral(std::complex<double> nu, double z);

}  // namespace snnlab

#endif  // SNNLAB_SPECIAL_FUNCTIONS_H_
