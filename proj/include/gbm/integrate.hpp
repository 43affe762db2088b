#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

#include "gbm/chart.hpp"

namespace gbm {

struct QuadratureSpec {
  /// Gauss-Legendre points per axis and cell.
  int order = 10;
  /// Maximum number of bisections of any single axis.
  int max_depth = 30;
  double abs_tol = 1e-8;
  double rel_tol = 1e-12;
  std::uint64_t seed = 0x5eed;
  std::size_t mc_samples = 100000;
  /// Hard cap on live cells in one adaptive run.
  std::size_t max_cells = 100000;

  /// abs 1e-8 up to two dimensions, 1e-4 above.
  static QuadratureSpec for_dimension(int n);
  /// Throws Errc::configuration unless order >= 2 and the tolerances are positive.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t cells = 0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<double(const Eigen::VectorXd&)>;
using ConstraintFn = std::function<double(const Eigen::VectorXd&)>;

/// Nodes and weights on [-1, 1] (Golub-Welsch).
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussLegendre gauss_legendre(int order);

/// Globally adaptive tensor Gauss-Legendre over a box. The per-cell error is
/// the size of the two highest Legendre modes seen by the rule along each
/// axis (a comparison against the lower-order rules on the same nodes); the
/// worst axis is bisected. A run that hits the depth or cell limit returns
/// converged = false with the estimate inflated tenfold.
QuadResult quad_box(const Integrand& f, const std::vector<Axis>& box, const QuadratureSpec& spec);

/// Plain Monte Carlo over the box with a fixed seed; points where `inside`
/// is false contribute zero. `error` is one standard error.
QuadResult monte_carlo(const Integrand& f, const std::vector<Axis>& box, std::size_t samples, std::uint64_t seed,
                       const std::function<bool(const Eigen::VectorXd&)>& inside = {});

/// Box plus constraints c_i >= 0.
struct ConstrainedBox {
  std::vector<Axis> bounds;
  std::vector<ConstraintFn> constraints;

  bool contains(const Eigen::VectorXd& p) const;
};

/// Iterated adaptive Gauss-Legendre with a sharp indicator: along the last
/// axis the constraint sign changes are located and each inside piece is
/// integrated separately. A seeded Monte Carlo run cross-checks the value;
/// disagreement beyond 5x the combined estimates throws Errc::inconsistency.
/// The reported error is the larger of the two estimates; `value` is the
/// quadrature value.
QuadResult quad_region(const Integrand& f, const ConstrainedBox& region, const QuadratureSpec& spec);

/// Same without the Monte Carlo stage.
QuadResult quad_region_iterated(const Integrand& f, const ConstrainedBox& region, const QuadratureSpec& spec);

}  // namespace gbm
