#include <cmath>
#include <numbers>

#include "snnlab/special_functions.h"

namespace snnlab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

std::complex<double> LogGamma(std::complex<double> z) {
  using std::numbers::pi;
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(pi) - std::log(std::sin(pi * z)) - LogGamma(1.0 - z);
  }
  z -= 1.0;
  std::complex<double> x = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) x += kLanczosCoef[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> Gamma(std::complex<double> z) { return std::exp(LogGamma(z)); }

double Erfcx(double x) {
  if (x < 0.0) {
    const long double xl = x;
    return static_cast<double>(2.0L * std::exp(xl * xl)) - Erfcx(-x);
  }
  if (x < 100.0) {
    const long double xl = x;
    return static_cast<double>(std::exp(xl * xl) * std::erfc(xl));
  }
  // Asymptotic series; at x >= 100 the fourth term is below 1e-16.
  const double inv2 = 1.0 / (x * x);
  const double series = 1.0 - 0.5 * inv2 + 0.75 * inv2 * inv2 - 1.875 * inv2 * inv2 * inv2;
  return series / (x * std::sqrt(std::numbers::pi));
}

}  // namespace snnlab
