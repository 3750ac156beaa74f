// Parabolic cylinder functions of complex order and real argument.
//
// For Re nu < 0 the integral
//   J_nu(z) = int_0^inf exp(-z t - t^2/2) t^(-nu-1) dt
// is split at t = 1. On [0, 1] the Gaussian factor is expanded in its
// Taylor series and integrated term by term, which handles the oscillating
// t^(-i Im nu) singularity exactly. On [1, inf) a composite Gauss-Legendre
// rule with panels sized to the local oscillation rate is used, and the
// difference between a 40- and a 32-point rule on the same panels is the
// error estimate.
//
// For large |Im nu| the integrand is O(1) while J is O(exp(-pi |Im nu| / 2)),
// so the sum cancels catastrophically. The kernel runs in double first and
// escalates to __float128, then 50 and 100 decimal digits, whenever the
// observed cancellation would eat into the double-precision result.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <limits>

#include "snnlab/error.h"
#include "snnlab/special_functions.h"

namespace snnlab {

namespace {

namespace mp = boost::multiprecision;

template <class Real>
struct Cx {
  Real re = 0;
  Real im = 0;
};

template <class Real>
Cx<Real> operator+(const Cx<Real>& a, const Cx<Real>& b) { return {a.re + b.re, a.im + b.im}; }
template <class Real>
Cx<Real> operator-(const Cx<Real>& a, const Cx<Real>& b) { return {a.re - b.re, a.im - b.im}; }
template <class Real>
Cx<Real> operator*(const Cx<Real>& a, const Cx<Real>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class Real>
Cx<Real> operator*(const Real& s, const Cx<Real>& a) { return {s * a.re, s * a.im}; }
template <class Real>
Cx<Real> Divide(const Cx<Real>& a, const Cx<Real>& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
template <class Real>
Real Magnitude(const Cx<Real>& a) {
  using std::sqrt;
  return sqrt(a.re * a.re + a.im * a.im);
}
template <class Real>
std::complex<double> ToDouble(const Cx<Real>& a) {
  return {static_cast<double>(a.re), static_cast<double>(a.im)};
}

// Gauss-Legendre nodes and weights on [-1, 1], computed once per type.
template <class Real, int N>
struct GaussLegendre {
  Real nodes[N];
  Real weights[N];

  GaussLegendre() {
    using std::abs;
    using std::cos;
    const Real pi = boost::math::constants::pi<Real>();
    const Real tol = std::numeric_limits<Real>::epsilon() * 8;
    for (int i = 0; i < N; ++i) {
      Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(N) + Real(0.5)));
      Real dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= N; ++k) {
          const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1);
        const Real dx = p1 / dp;
        x -= dx;
        if (abs(dx) < tol) break;
      }
      nodes[i] = x;
      weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
  }

  static const GaussLegendre& Get() {
    static const GaussLegendre rule;
    return rule;
  }
};

struct KernelStatus {
  double rel_error = 0.0;      // estimated relative error of the smaller integral
  bool precision_exhausted = false;
};

// Computes J_nu (j0) and J_{nu-1} (j1) together: the integrands differ by a
// factor of t. Requires Re nu < 0.
template <class Real>
KernelStatus IntegralPair(double nu_re, double nu_im, double z_in, int refine,
                          Cx<Real>* j0, Cx<Real>* j1) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;

  const Real a = Real(-nu_re) - 1;  // t^(-nu-1) = t^a * t^(i b)
  const Real b = Real(-nu_im);
  const Real z = Real(z_in);
  const Real eps = std::numeric_limits<Real>::epsilon();

  Cx<Real> s0, s1;
  Real scale = 0;

  // [0, 1]: sum_n c_n / (n + a + 1 + i b) with exp(-z t - t^2/2) = sum c_n t^n.
  {
    Real c_prev = 0, c = 1;
    int quiet = 0;
    for (int n = 0; n < 4000; ++n) {
      const Cx<Real> d0{Real(n) + a + 1, b};
      const Cx<Real> d1{Real(n) + a + 2, b};
      const Cx<Real> one{c, Real(0)};
      const Cx<Real> t0 = Divide(one, d0);
      const Cx<Real> t1 = Divide(one, d1);
      s0 = s0 + t0;
      s1 = s1 + t1;
      const Real mag = abs(c);
      if (mag > scale) scale = mag;
      if (n > 4 && mag < eps * scale * Real(1e-3)) {
        if (++quiet >= 3) break;
      } else {
        quiet = 0;
      }
      const Real c_next = (-z * c - c_prev) / Real(n + 1);
      c_prev = c;
      c = c_next;
    }
  }

  // [1, x_max]: the tail beyond x_max is below 1e-20 of the expected size of
  // J, which decays like exp(-pi |b| / 2).
  const Real log_floor = Real(-46) - boost::math::constants::half_pi<Real>() * abs(b);
  Real x_max = 2;
  while (-z * x_max - x_max * x_max / 2 + (a + 1) * log(x_max) > log_floor) x_max += Real(0.5);

  const auto& hi = GaussLegendre<Real, 40>::Get();
  const auto& lo = GaussLegendre<Real, 32>::Get();
  Real err0 = 0, err1 = 0;
  Real x = 1;
  const Real budget = Real(3) / Real(1 << refine);
  while (x < x_max) {
    const Real rate = abs(b) / x + abs(z + x) + abs(a) / x + 1;
    Real h = budget / rate;
    if (h > 1) h = 1;
    if (x + h > x_max) h = x_max - x;
    const Real mid = x + h / 2;
    const Real half = h / 2;

    auto panel = [&](const auto& rule, int npts, Cx<Real>& p0, Cx<Real>& p1) {
      for (int k = 0; k < npts; ++k) {
        const Real t = mid + half * rule.nodes[k];
        const Real lt = log(t);
        const Real mag = exp(a * lt - z * t - t * t / 2) * rule.weights[k] * half;
        if (mag > scale) scale = mag;
        const Real ph = b * lt;
        const Cx<Real> v{mag * cos(ph), mag * sin(ph)};
        p0 = p0 + v;
        p1 = p1 + t * v;
      }
    };
    Cx<Real> h0, h1, l0, l1;
    panel(hi, 40, h0, h1);
    panel(lo, 32, l0, l1);
    s0 = s0 + h0;
    s1 = s1 + h1;
    err0 += Magnitude(h0 - l0);
    err1 += Magnitude(h1 - l1);
    x += h;
  }

  *j0 = s0;
  *j1 = s1;
  const Real m0 = Magnitude(s0);
  const Real m1 = Magnitude(s1);
  const Real smallest = m0 < m1 ? m0 : m1;
  KernelStatus status;
  const Real quad = (err0 > err1 ? err0 : err1) / smallest;
  const Real rounding = eps * scale * 10 / smallest;
  status.rel_error = static_cast<double>(quad + rounding);
  status.precision_exhausted = rounding > Real(1e-14);
  return status;
}

// Tries increasingly precise kernels until the estimate meets tolerance.
template <class Fn>
void WithEscalatingPrecision(Fn&& fn) {
  constexpr double kTolerance = 2e-14;
  KernelStatus last;
  for (int refine = 0; refine < 3; ++refine) {
    last = fn(double{}, refine);
    if (last.precision_exhausted) last = fn(mp::float128{}, refine);
    if (last.precision_exhausted) last = fn(mp::cpp_bin_float_50{}, refine);
    if (last.precision_exhausted) last = fn(mp::cpp_bin_float_100{}, refine);
    if (last.precision_exhausted) {
      throw QuadratureError("parabolic cylinder integral: cancellation exceeds 100-digit precision",
                            last.rel_error);
    }
    if (last.rel_error < kTolerance) return;
  }
  // The 40/32-point difference also carries rounding noise, which can keep
  // a double-precision estimate just above tolerance. Retry the finest
  // panels with more digits.
  last = fn(mp::float128{}, 2);
  if (last.rel_error < kTolerance) return;
  last = fn(mp::cpp_bin_float_50{}, 2);
  if (last.rel_error < kTolerance) return;
  throw QuadratureError("parabolic cylinder integral did not converge", last.rel_error);
}

void CheckNegativeOrder(std::complex<double> nu) {
  if (!(nu.real() < 0.0)) {
    throw InvalidArgument("integral representation requires Re nu < 0");
  }
}

}  // namespace

std::complex<double> ParabolicCylinderIntegral(std::complex<double> nu, double z) {
  CheckNegativeOrder(nu);
  std::complex<double> result;
  WithEscalatingPrecision([&](auto tag, int refine) {
    using Real = decltype(tag);
    Cx<Real> j0, j1;
    const KernelStatus status = IntegralPair<Real>(nu.real(), nu.imag(), z, refine, &j0, &j1);
    result = ToDouble(j0);
    return status;
  });
  return result;
}

ParabolicCylinderPair ParabolicCylinderDPair(std::complex<double> nu, double z) {
  // Base order nu0 with Re nu0 in [-1, 0), reached after `up` upward steps.
  const int up = nu.real() < 0.0 ? 0 : static_cast<int>(std::floor(nu.real())) + 1;
  const std::complex<double> nu0 = nu - static_cast<double>(up);

  // In units of exp(-z^2/4) / Gamma(-nu0):
  //   E_0 = J_{nu0},  E_{-1} = J_{nu0-1} / (-nu0),
  //   E_{k+1} = z E_k - (nu0 + k) E_{k-1}.
  std::complex<double> lower, upper;
  WithEscalatingPrecision([&](auto tag, int refine) {
    using Real = decltype(tag);
    Cx<Real> j0, j1;
    const KernelStatus status = IntegralPair<Real>(nu0.real(), nu0.imag(), z, refine, &j0, &j1);
    Cx<Real> e_prev = Divide(j1, Cx<Real>{Real(-nu0.real()), Real(-nu0.imag())});
    Cx<Real> e_cur = j0;
    const Real zr = Real(z);
    for (int k = 0; k < up; ++k) {
      const Cx<Real> order{Real(nu0.real()) + k, Real(nu0.imag())};
      const Cx<Real> e_next = zr * e_cur - order * e_prev;
      e_prev = e_cur;
      e_cur = e_next;
    }
    lower = ToDouble(e_prev);
    upper = ToDouble(e_cur);
    return status;
  });
  const std::complex<double> factor = std::exp(-z * z / 4.0 - LogGamma(-nu0));
  return {lower * factor, upper * factor};
}

std::complex<double> ParabolicCylinderD(std::complex<double> nu, double z) {
  return ParabolicCylinderDPair(nu, z).upper;
}

}  // namespace snnlab
