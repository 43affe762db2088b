#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gbm/curvature_tensor.hpp"

namespace gbm {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  double length() const { return hi - lo; }
};

/// First and second coordinate partials of the metric at one point.
/// `first[k]` is d_k g, `second[k * n + l]` is d_k d_l g.
struct MetricDerivatives {
  std::vector<Eigen::MatrixXd> first;
  std::vector<Eigen::MatrixXd> second;

  const Eigen::MatrixXd& d2(int k, int l) const {
    return second[static_cast<std::size_t>(k * static_cast<int>(first.size()) + l)];
  }
};

enum class DerivativeMode { analytic, finite_difference };

/// Known global data for charts that cover a closed manifold up to
/// coordinate-singular caps removed from the domain box.
struct ClosedManifoldInfo {
  int euler_characteristic = 0;
  /// Exact integral of the Euler density over the removed caps.
  double excluded_mass = 0.0;
};

/// A coordinate box together with a Riemannian metric on it.
///
/// The metric callback must return a symmetric positive-definite matrix at
/// every point of the box; `metric()` checks this on every call. In
/// finite-difference mode the partials are central differences with one
/// level of Richardson extrapolation.
class MetricChart {
 public:
  using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
  using DerivativeFn = std::function<MetricDerivatives(const Eigen::VectorXd&)>;

  MetricChart(std::string name, std::vector<Axis> domain, MetricFn metric);
  MetricChart(std::string name, std::vector<Axis> domain, MetricFn metric, DerivativeFn partials);

  const std::string& name() const { return name_; }
  int dimension() const { return static_cast<int>(domain_.size()); }
  const std::vector<Axis>& domain() const { return domain_; }
  DerivativeMode derivative_mode() const { return partials_ ? DerivativeMode::analytic : DerivativeMode::finite_difference; }

  /// Periodic axes are wrapped into [lo, hi); throws Errc::domain when a
  /// non-periodic coordinate leaves its closed interval.
  Eigen::VectorXd wrap(const Eigen::VectorXd& p) const;
  bool contains(const Eigen::VectorXd& p) const;

  /// Checked metric at p (wrapped).
  Eigen::MatrixXd metric(const Eigen::VectorXd& p) const;
  /// Unchecked evaluation; used for difference stencils that may leave the box.
  Eigen::MatrixXd raw_metric(const Eigen::VectorXd& p) const { return metric_(p); }

  MetricDerivatives derivatives(const Eigen::VectorXd& p) const;

  /// Step of the first-derivative stencils on `axis`; 0 in analytic mode.
  /// Second-derivative stencils use 100 times this step.
  double fd_step(int axis) const;
  /// Overrides the default step policy. Throws Errc::configuration when the
  /// step is below 1e-10 times an axis length.
  void set_fd_step(double h);

  /// Same chart with the analytic partials dropped.
  MetricChart finite_difference() const;
  /// Same chart with metric multiplied by c^2.
  MetricChart scaled(double c) const;

  const std::optional<ClosedManifoldInfo>& closed_info() const { return closed_; }
  void set_closed_info(ClosedManifoldInfo info) { closed_ = info; }

 private:
  std::string name_;
  std::vector<Axis> domain_;
  MetricFn metric_;
  DerivativeFn partials_;
  std::optional<double> step_override_;
  std::optional<ClosedManifoldInfo> closed_;
};

/// Throws Errc::definiteness unless g is symmetric to 1e-12 (relative to its
/// largest entry) and Cholesky-positive.
void check_spd(const Eigen::MatrixXd& g);

/// Christoffel symbols of the second kind, `symbols[k](i, j)` = Gamma^k_ij.
struct Christoffel {
  std::vector<Eigen::MatrixXd> symbols;
  /// Largest difference step used; 0 for analytic partials.
  double step = 0.0;

  double operator()(int k, int i, int j) const { return symbols[static_cast<std::size_t>(k)](i, j); }
};

Christoffel christoffel(const MetricChart& chart, const Eigen::VectorXd& p);

/// Coordinate components R_ijkl = g(R(d_k, d_l) d_j, d_i), so R_1212 > 0 on a sphere.
CurvatureTensor<double> riemann_covariant(const MetricChart& chart, const Eigen::VectorXd& p);

/// Columns form a g-orthonormal basis (Gram-Schmidt in axis order).
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g);
Eigen::MatrixXd orthonormal_frame(const MetricChart& chart, const Eigen::VectorXd& p);

/// Orthonormal-frame curvature with the algebraic symmetries enforced; the
/// pre-symmetrization residual is kept on the tensor.
CurvatureTensor<double> riemann_orthonormal(const MetricChart& chart, const Eigen::VectorXd& p);

/// Sectional curvature of a surface chart. Throws Errc::dimension when n != 2.
double gauss_curvature(const MetricChart& chart, const Eigen::VectorXd& p);

/// Riemannian volume density sqrt(det g).
double volume_density(const MetricChart& chart, const Eigen::VectorXd& p);

}  // namespace gbm
