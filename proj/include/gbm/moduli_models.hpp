#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbm/chart.hpp"
#include "gbm/chi_oracle.hpp"
#include "gbm/polyhedra.hpp"

namespace gbm {

// ---- once-punctured torus in trace coordinates

/// x^2 + y^2 + z^2 = xyz, all entries > 2.
struct FrickeTriple {
  double x = 3.0;
  double y = 3.0;
  double z = 3.0;

  double operator[](int i) const { return i == 0 ? x : i == 1 ? y : z; }
  double& operator[](int i) { return i == 0 ? x : i == 1 ? y : z; }
  double min() const { return std::min({x, y, z}); }
  bool operator==(const FrickeTriple&) const = default;
};

/// |x^2 + y^2 + z^2 - xyz| / max(1, xyz).
double fricke_residual(const FrickeTriple& t);
/// Throws Errc::model_consistency when an entry is <= 2 or the relative
/// residual exceeds 1e-9.
void check_fricke(const FrickeTriple& t);
FrickeTriple make_fricke(double x, double y, double z);
/// Completes (x, y) with the larger or smaller root z. Errc::domain when
/// no real root exists.
FrickeTriple fricke_from_pair(double x, double y, bool larger_root);

/// Replaces entry i by its other root, (sum of squares of the others) / entry,
/// which is yz - x without the cancellation.
FrickeTriple markov_move(const FrickeTriple& t, int i);

struct Reduction {
  FrickeTriple triple;
  int moves = 0;
};
/// Moves the largest entry while that strictly decreases it.
Reduction fricke_reduce(const FrickeTriple& t);

/// Length of the closed geodesic with trace t: 2 arccosh(t / 2).
double trace_to_length(double trace);
/// Shortest simple closed geodesic, from the reduced triple.
double systole(const FrickeTriple& t);
/// Minimum over every triple within `depth` non-backtracking moves of t.
double systole_tree_search(const FrickeTriple& t, int depth = 12);
bool thick_membership(const FrickeTriple& t, double eps);

/// Random reduced triples pushed up the tree by at most `max_moves` moves.
std::vector<FrickeTriple> random_fricke_triples(std::size_t count, std::uint64_t seed, int max_moves = 8);

// ---- thin-part model du^2 + e^{-6u} dtheta^2

struct ThinCoords {
  double u = 0.0;
  /// fibre coordinate in [0, 1)
  double theta = 0.0;
  /// l = e^{-2u}
  double length() const;
};

/// u0 = -log sqrt(eps).
double thin_level(double eps);
Eigen::Matrix2d thin_model_metric(double u);
/// |grad l| in the model metric; 2 l.
double grad_length_norm(double u);

struct LevelSetII {
  double numeric = 0.0;
  double closed_form = 3.0;
};
/// II of {u = u0} against the normal pointing into {u > u0}, computed with
/// finite differences on the model chart.
LevelSetII level_set_ii(double u0);

struct FibreVolume {
  double value = 0.0;
  /// value = eps^{riemannian_exponent}
  double riemannian_exponent = 0.0;
  /// exponent appearing in the cruder displayed bound, and eps to that power
  double bound_exponent = 0.0;
  double bound_value = 0.0;
};
/// Volume of the m-torus fibre at u0 = -log sqrt(eps) in the m-fold product
/// of model metrics. Errc::range unless 0 < eps < 1 and m >= 1.
FibreVolume thin_fibre_volume(double eps, int m);

struct OuterCone {
  double apex_u = 0.0;
  bool contains(const ThinCoords& p) const { return p.u > apex_u; }
  /// (u, theta) -> (u0, theta)
  ThinCoords retract(const ThinCoords& p) const { return {apex_u, p.theta}; }
};
/// Errc::domain unless the point sits on the eps level.
OuterCone outer_cone(const ThinCoords& p, double eps);

// ---- modular curve, curvature -1

struct ModularArea {
  double area = 0.0;
  double error = 0.0;
  /// index / Y, the area above the cutoff
  double tail = 0.0;
  bool converged = true;
};
/// index * area of {|a| <= 1/2, a^2 + b^2 >= 1, b <= Y} in b^-2 (da^2 + db^2).
/// Y may be infinite. Errc::range for Y < 1 or index < 1.
ModularArea modular_thick_area(double Y, int index = 1);
/// -area / 2 pi.
double chi_from_area(double area);

/// Gamma(3): index 12 in PSL(2, Z), genus 0, four cusps of width 3.
inline constexpr int kGamma3Index = 12;
/// Truncated fundamental domain of the index-12 cover at height Y.
Region modular_region(double Y, int index = kGamma3Index);

// ---- model handles

/// What an exhaustion needs: thick parts by eps, membership for the nesting
/// check, and the bounds entering the residual estimate.
struct ExhaustibleModel {
  std::string name;
  std::function<Region(double eps)> thick;
  std::function<bool(const Eigen::VectorXd&, double eps)> member;
  double psi_bound = 0.0;
  double ii_bound = 0.0;
  std::optional<ExactRational> expected_chi;
  /// closed-form thick integral, when there is one
  std::function<double(double eps)> reference;
  /// closed manifolds: the thick part is everything for every eps
  std::optional<MetricChart> closed_chart;
  /// how the command line maps a cutoff to eps
  std::function<double(double cutoff)> eps_from_cutoff;
};

/// "modular-curve" {index}, "thin-strip", or a closed metric from the
/// catalog. "punctured-torus" has no integrable metric here and throws
/// Errc::capability; unknown names throw Errc::configuration.
ExhaustibleModel model_by_name(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> model_catalog();

}  // namespace gbm
