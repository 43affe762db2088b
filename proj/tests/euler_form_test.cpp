#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gbm/error.hpp"
#include "gbm/euler_form.hpp"
#include "gbm/metrics.hpp"
#include "support.hpp"

using namespace gbm;
using std::numbers::pi;

namespace {

// R_abcd = K (d_ac d_bd - d_ad d_bc)
CurvatureTensor<double> constant_curvature(int n, double K) {
  CurvatureTensor<double> R(n);
  R.for_each_index([&](int a, int b, int c, int d) { R(a, b, c, d) = K * ((a == c && b == d) - (a == d && b == c)); });
  return R;
}

// Block tensor of a product of two unit spheres.
CurvatureTensor<double> s2xs2_tensor() {
  CurvatureTensor<double> R(4);
  for (int off : {0, 2}) {
    R(off, off + 1, off, off + 1) = R(off + 1, off, off + 1, off) = 1.0;
    R(off, off + 1, off + 1, off) = R(off + 1, off, off, off + 1) = -1.0;
  }
  return R;
}

// Hand enumeration of the n = 2 double sum: the four pairs (mu, nu) over
// {12, 21} give R1212 - R1221 - R2112 + R2121.
double hand_n2(const CurvatureTensor<double>& R) {
  const double sum = R(0, 1, 0, 1) - R(0, 1, 1, 0) - R(1, 0, 0, 1) + R(1, 0, 1, 0);
  return sum / (2 * pi * 4 * 1);
}

}  // namespace

TEST(PermutationSum, Examples) {
  for (int n : {2, 4, 6}) EXPECT_EQ(gb_density_perm(CurvatureTensor<double>(n)).value, 0.0);
  const auto s2 = constant_curvature(2, 1.0);
  EXPECT_NEAR(hand_n2(s2), 1 / (2 * pi), 1e-15);
  EXPECT_NEAR(gb_density_perm(s2).value, 1 / (2 * pi), 1e-15);
  EXPECT_NEAR(gb_density_perm(s2xs2_tensor()).value, 1 / (4 * pi * pi), 1e-15);
  EXPECT_EQ(gb_density_perm(constant_curvature(3, 1.0)).value, 0.0);
  try {
    gb_density_perm(CurvatureTensor<double>(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::capability);
  }
}

TEST(PermutationSum, MatchesHandEnumerationForSurfaces) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto R = test_support::random_curvature(2, rng);
    EXPECT_NEAR(gb_density_perm(R).value, hand_n2(R), 1e-14);
  }
}

TEST(Pfaffian, Examples) {
  EXPECT_EQ(gb_density_pfaffian(CurvatureTensor<double>(4)).value, 0.0);
  EXPECT_NEAR(gb_density_pfaffian(constant_curvature(2, 1.0)).value, 1 / (2 * pi), 1e-15);
  EXPECT_NEAR(gb_density_pfaffian(constant_curvature(4, 1.0)).value, 3 / (4 * pi * pi), 1e-15);
  EXPECT_NEAR(gb_density_perm(constant_curvature(4, 1.0)).value, 3 / (4 * pi * pi), 1e-15);
  // S^6: Pf = 5!! = 15, chi = 2 against Vol(S^6) = 16 pi^3 / 15.
  EXPECT_NEAR(gb_density_pfaffian(constant_curvature(6, 1.0)).value * 16 * pi * pi * pi / 15, 2.0, 1e-12);
  EXPECT_NEAR(gb_density_pfaffian(constant_curvature(8, 1.0)).value * 32 * pi * pi * pi * pi / 105, 2.0, 1e-12);
}

TEST(Pfaffian, RejectsNonAntisymmetricInput) {
  auto R = constant_curvature(2, 1.0);
  R(0, 1, 0, 1) = 1.0;
  R(1, 0, 0, 1) = 0.5;
  try {
    gb_density_pfaffian(R);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::numerical_quality);
  }
}

TEST(EulerDensityProperties, RoutesAgreeOnRandomTensors) {
  std::mt19937_64 rng(2024);
  for (int n : {2, 4}) {
    for (int i = 0; i < 100; ++i) {
      const auto R = test_support::random_curvature(n, rng);
      EXPECT_NEAR(gb_density_perm(R).value, gb_density_pfaffian(R).value, 1e-10);
    }
  }
  for (int i = 0; i < 3; ++i) {
    const auto R = test_support::random_curvature(6, rng);
    EXPECT_NEAR(gb_density_perm(R).value, gb_density_pfaffian(R).value, 1e-10);
  }
}

TEST(EulerDensityProperties, FrameInvariance) {
  std::mt19937_64 rng(77);
  for (int n : {2, 4, 6}) {
    for (int i = 0; i < 20; ++i) {
      const auto R = test_support::random_curvature(n, rng);
      const auto Q = test_support::random_orthogonal(n, rng);
      // Rotations preserve orientation-sensitive Psi; reflections flip
      // nothing since Psi is quadratic in the orientation sign.
      EXPECT_NEAR(gb_density_pfaffian(R.transformed(Q)).value, gb_density_pfaffian(R).value, 1e-9);
      if (n <= 4) EXPECT_NEAR(gb_density_perm(R.transformed(Q)).value, gb_density_perm(R).value, 1e-9);
    }
  }
}

TEST(EulerDensity, ChartPipeline) {
  EXPECT_EQ(gb_density(metrics::flat_torus(), Eigen::Vector2d(0.1, 0.2)).value, 0.0);
  EXPECT_NEAR(gb_density(metrics::sphere(2.0), Eigen::Vector2d(1.1, 0.2)).value, 1 / (8 * pi), 1e-14);
  const auto thin = gb_density(metrics::model_thin(), Eigen::Vector2d(1.0, 0.5));
  EXPECT_NEAR(thin.value, -9 / (2 * pi), 1e-10);
  ASSERT_TRUE(thin.cross_check.has_value());
  EXPECT_NEAR(*thin.cross_check, thin.value, 1e-12);
  EXPECT_EQ(thin.method, DensityMethod::permutation_sum);
}

TEST(EulerDensityProperties, SurfacesGiveCurvatureOverTwoPi) {
  std::mt19937_64 rng(8);
  for (const auto& chart : {metrics::sphere(), metrics::sphere(3.0), metrics::half_plane(), metrics::model_thin()}) {
    for (int i = 0; i < 20; ++i) {
      const Eigen::VectorXd p = test_support::random_point(chart, rng);
      const double K = gauss_curvature(chart, p);
      EXPECT_NEAR(gb_density(chart, p).value, K / (2 * pi), 1e-12 * std::abs(K / (2 * pi)));
    }
  }
}

TEST(EulerDensityProperties, ScalingMultipliesByPowerOfC) {
  std::mt19937_64 rng(10);
  for (const auto& chart : {metrics::sphere(), metrics::s2xs2()}) {
    const Eigen::VectorXd p = test_support::random_point(chart, rng);
    const double base = gb_density(chart, p).value;
    const int n = chart.dimension();
    for (double c : {0.5, 2.0, 10.0})
      EXPECT_NEAR(gb_density(chart.scaled(c), p).value, base * std::pow(c, -n), 1e-6 * std::abs(base) * std::pow(c, -n));
  }
}
