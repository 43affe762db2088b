#pragma once

#include <Eigen/Dense>

#include <random>

#include "gbm/chart.hpp"
#include "gbm/curvature_tensor.hpp"

namespace gbm::test_support {

/// Random algebraic curvature tensor: a random symmetric form on pairs
/// (i<j), expanded with the pair antisymmetries, then symmetrized so the
/// first Bianchi identity holds as well.
inline CurvatureTensor<double> random_curvature(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  const int m = n * (n - 1) / 2;
  Eigen::MatrixXd S(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) S(a, b) = S(b, a) = normal(rng);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  CurvatureTensor<double> R(n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const auto [i, j] = pairs[static_cast<std::size_t>(a)];
      const auto [k, l] = pairs[static_cast<std::size_t>(b)];
      const double v = S(a, b);
      R(i, j, k, l) = v;
      R(j, i, k, l) = -v;
      R(i, j, l, k) = -v;
      R(j, i, l, k) = v;
    }
  R.symmetrize();
  return R;
}

inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

/// Uniform point inside the chart box, shrunk away from the edges by `margin`
/// (fraction of each axis).
inline Eigen::VectorXd random_point(const MetricChart& chart, std::mt19937_64& rng, double margin = 0.05) {
  Eigen::VectorXd p(chart.dimension());
  for (int k = 0; k < chart.dimension(); ++k) {
    const Axis& a = chart.domain()[static_cast<std::size_t>(k)];
    std::uniform_real_distribution<double> u(a.lo + margin * a.length(), a.hi - margin * a.length());
    p[k] = u(rng);
  }
  return p;
}

}  // namespace gbm::test_support
