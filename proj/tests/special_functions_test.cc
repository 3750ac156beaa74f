#include "snnlab/special_functions.h"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "snnlab/error.h"

namespace snnlab {
namespace {

using cd = std::complex<double>;

double RelErr(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

TEST(GammaTest, ReferenceValues) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  EXPECT_LT(RelErr(Gamma(0.5), sqrt_pi), 1e-14);
  EXPECT_LT(RelErr(Gamma(5.0), 24.0), 1e-14);
  EXPECT_LT(RelErr(Gamma(-1.5), 4.0 * sqrt_pi / 3.0), 1e-14);
  EXPECT_LT(RelErr(Gamma({1.0, 1.0}), {0.49801566811835604, -0.15494982830181069}), 1e-14);
  EXPECT_LT(RelErr(Gamma({0.3, 4.0}), {0.0011646436848114906, 0.0033525598880352024}), 1e-13);
  EXPECT_LT(RelErr(Gamma({-2.5, 0.5}), {-0.33387520352243234, -0.20645730796360841}), 1e-13);
  EXPECT_LT(RelErr(Gamma({10.0, -20.0}), {-0.13371397782847203, -0.12367497527124525}), 1e-12);
}

TEST(GammaTest, RecurrenceHolds) {
  for (double re : {-3.3, -0.7, 0.2, 1.9, 6.5}) {
    for (double im : {0.0, 0.4, -2.0, 7.0}) {
      const cd z{re, im};
      EXPECT_LT(RelErr(Gamma(z + 1.0), z * Gamma(z)), 1e-13) << z;
    }
  }
}

TEST(ErfcxTest, ReferenceValues) {
  EXPECT_NEAR(Erfcx(0.0), 1.0, 1e-15);
  EXPECT_NEAR(Erfcx(1.0) / 0.427583576155807 - 1.0, 0.0, 1e-14);
  EXPECT_NEAR(Erfcx(5.0) / 0.11070463773306863 - 1.0, 0.0, 1e-14);
  EXPECT_NEAR(Erfcx(30.0) / 0.018795888861416751 - 1.0, 0.0, 1e-14);
  EXPECT_NEAR(Erfcx(-1.0) / 5.0089800807622835 - 1.0, 0.0, 1e-14);
}

struct Reference {
  cd nu;
  double z;
  cd value;
};

// High-precision values computed independently.
const Reference kReferences[] = {
    {{-1.0, 0.0}, 0.0, {1.2533141373155003, 0.0}},
    {{-1.0, 0.5}, 0.7, {0.69229691991294885, 0.14785418703238043}},
    {{0.0, 0.5}, 0.7, {0.94160675157755061, 0.034123683314847321}},
    {{-2.0, 3.0}, -1.2, {15.010250699078079, 4.3019136585787339}},
    {{0.0, 5.0}, 2.0, {-0.024353957556177082, -1.6087661134912043}},
    {{-1.0, 10.0}, -3.0, {433622.72221902792, 575148.38539099753}},
    {{0.0, 20.0}, 1.5, {39109.444020992434, -16460.238007301791}},
    {{-0.5, 0.1}, 0.0, {1.2199120666048069, -0.023822396498725608}},
    {{2.3, 1.0}, 0.4, {-1.8545646355441834, -1.3590545733171619}},
    {{0.0, 40.0}, -0.3, {-66047738120867.452, 97926711672290.095}},
};

TEST(ParabolicCylinderTest, MatchesReferenceTable) {
  for (const auto& r : kReferences) {
    EXPECT_LT(RelErr(ParabolicCylinderD(r.nu, r.z), r.value), 1e-11)
        << "nu " << r.nu << " z " << r.z;
  }
}

TEST(ParabolicCylinderTest, ElementaryCases) {
  for (double z : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
    const double g = std::exp(-z * z / 4.0);
    EXPECT_LT(RelErr(ParabolicCylinderD(0.0, z), g), 1e-13) << z;
    EXPECT_LT(RelErr(ParabolicCylinderD(1.0, z == 0.0 ? 1.0 : z),
                     (z == 0.0 ? 1.0 : z) * std::exp(-(z == 0.0 ? 1.0 : z * z) / 4.0)),
              1e-13);
    // D_{-1}(z) = exp(z^2/4) sqrt(pi/2) erfc(z / sqrt 2)
    const double dm1 = g * std::sqrt(std::numbers::pi / 2.0) * Erfcx(z / std::sqrt(2.0));
    EXPECT_LT(RelErr(ParabolicCylinderD(-1.0, z), dm1), 1e-13) << z;
  }
  EXPECT_NEAR(ParabolicCylinderD(-1.0, 0.0).real(), std::sqrt(std::numbers::pi / 2.0), 1e-14);
}

// Kummer-function representation, summed directly.
cd KummerM(cd a, double b, double x) {
  cd term = 1.0, sum = 1.0;
  for (int n = 0; n < 500; ++n) {
    term *= (a + static_cast<double>(n)) / (b + n) * x / static_cast<double>(n + 1);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

cd KummerD(cd nu, double z) {
  const double x = z * z / 2.0;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const cd first = sqrt_pi / Gamma((1.0 - nu) / 2.0) * KummerM(-nu / 2.0, 0.5, x);
  const cd second =
      std::sqrt(2.0) * sqrt_pi * z / Gamma(-nu / 2.0) * KummerM((1.0 - nu) / 2.0, 1.5, x);
  return std::pow(2.0, nu / 2.0) * std::exp(-z * z / 4.0) * (first - second);
}

TEST(ParabolicCylinderTest, AgreesWithKummerSeries) {
  for (double re : {-1.7, -0.6, 0.0, 0.45, 1.3}) {
    for (double im : {0.3, 1.0, 2.5}) {
      for (double z : {-1.5, -0.4, 0.0, 0.8, 1.7}) {
        const cd nu{re, im};
        EXPECT_LT(RelErr(ParabolicCylinderD(nu, z), KummerD(nu, z)), 1e-10)
            << "nu " << nu << " z " << z;
      }
    }
  }
}

TEST(ParabolicCylinderTest, RecurrenceResidualOverGrid) {
  double worst = 0.0;
  for (double omega = 0.1; omega <= 20.0; omega *= 1.6) {
    for (double z = -3.0; z <= 3.0; z += 0.75) {
      const cd nu{0.0, omega};
      const cd dp1 = ParabolicCylinderD(nu + 1.0, z);
      const cd d0 = ParabolicCylinderD(nu, z);
      const cd dm1 = ParabolicCylinderD(nu - 1.0, z);
      const double scale = std::abs(dp1) + std::abs(z * d0) + std::abs(nu * dm1);
      worst = std::max(worst, std::abs(dp1 - z * d0 + nu * dm1) / scale);
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(ParabolicCylinderTest, PairMatchesSingleCalls) {
  const cd nu{0.4, 3.0};
  const auto pair = ParabolicCylinderDPair(nu, 0.9);
  EXPECT_LT(RelErr(pair.upper, ParabolicCylinderD(nu, 0.9)), 1e-14);
  EXPECT_LT(RelErr(pair.lower, ParabolicCylinderD(nu - 1.0, 0.9)), 1e-12);
}

TEST(ParabolicCylinderIntegralTest, ReferenceValues) {
  EXPECT_LT(RelErr(ParabolicCylinderIntegral({-1.0, 0.5}, 0.7),
                   {0.5939745400045041, 0.29020243151974911}),
            1e-12);
  EXPECT_LT(RelErr(ParabolicCylinderIntegral({-2.0, 3.0}, -1.2),
                   {-1.2068184157074801, -2.4825443350913854}),
            1e-12);
  EXPECT_LT(RelErr(ParabolicCylinderIntegral({-0.5, 8.0}, 1.0),
                   {-0.00012492994732456417, -0.00031536467162016798}),
            1e-11);
}

TEST(ParabolicCylinderIntegralTest, RejectsNonNegativeOrder) {
  EXPECT_THROW(ParabolicCylinderIntegral({0.0, 1.0}, 0.0), InvalidArgument);
  EXPECT_THROW(ParabolicCylinderIntegral({0.5, 0.0}, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace snnlab
