#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gbm/chart.hpp"
#include "gbm/integrate.hpp"

namespace gbm {

/// Smooth function c with the region on the side c >= 0.
struct Constraint {
  std::string name;
  ConstraintFn value;
  /// Optional closed-form coordinate gradient and Hessian; differences otherwise.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient = {};
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian = {};
  /// Typical magnitude; the active-set tolerance is multiplied by it.
  double scale = 1.0;
};

/// Map from a parameter box onto a face. Zero-dimensional faces use an
/// empty box and a constant map.
struct FaceParametrization {
  std::vector<Axis> box;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> map;
};

struct Face {
  std::string label;
  /// Sorted indices of the constraints that vanish on the face.
  std::vector<int> active;
  std::optional<FaceParametrization> param;
};

struct Topology {
  int chi = 0;
  int chi_boundary = 0;
};

/// Riemannian polyhedron: the part of a chart box where all constraints
/// are nonnegative.
class Region {
 public:
  Region(std::string name, MetricChart chart, std::vector<Axis> bounds, std::vector<Constraint> constraints);

  const std::string& name() const { return name_; }
  const MetricChart& chart() const { return chart_; }
  int dimension() const { return chart_.dimension(); }
  const std::vector<Axis>& bounds() const { return bounds_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void add_face(Face f);
  const std::vector<Face>& faces() const { return faces_; }
  int face_dimension(const Face& f) const { return dimension() - static_cast<int>(f.active.size()); }

  void set_topology(Topology t) { topology_ = t; }
  const std::optional<Topology>& topology() const { return topology_; }
  /// Counts of inner cells per dimension (index = dimension).
  void set_cell_data(std::vector<int> counts) { cells_ = std::move(counts); }
  const std::optional<std::vector<int>>& cell_data() const { return cells_; }

  /// Number of sheets when the region stands for a finite cover of what is
  /// drawn in the chart; integrals and face volumes are multiplied by it.
  void set_multiplicity(int m) { multiplicity_ = m; }
  int multiplicity() const { return multiplicity_; }

  bool contains(const Eigen::VectorXd& p, double tol = 0.0) const;
  ConstrainedBox as_box() const;

  Eigen::VectorXd constraint_gradient(int i, const Eigen::VectorXd& p) const;
  Eigen::MatrixXd constraint_hessian(int i, const Eigen::VectorXd& p) const;

 private:
  std::string name_;
  MetricChart chart_;
  std::vector<Axis> bounds_;
  std::vector<Constraint> constraints_;
  std::vector<Face> faces_;
  std::optional<Topology> topology_;
  std::optional<std::vector<int>> cells_;
  int multiplicity_ = 1;
};

/// Indices with |c_i(p)| <= tol * scale_i. Throws Errc::domain if some
/// c_i(p) < -tol * scale_i.
std::vector<int> active_constraints(const Region& region, const Eigen::VectorXd& p, double tol = 1e-8);

/// Unit outward normal (coordinate components) of constraint i at p:
/// -grad c / |grad c| in the metric. Throws Errc::singular_gradient when
/// |grad c| < 1e-10.
Eigen::VectorXd outward_normal(const Region& region, int i, const Eigen::VectorXd& p);

struct OuterAngleOptions {
  double tol = 1e-8;
  std::size_t samples = 200000;
  std::uint64_t seed = 0x0a9e;
  /// Use sampling even where a closed form exists.
  bool force_sampling = false;
};

/// Outer angle O(p): unit vectors v with <v, w> <= 0 for every w in the
/// tangent cone, i.e. the nonnegative span of the outward normals, as a
/// fraction of the unit sphere of the normal space. For one active
/// constraint the cell is the single outward normal and `measure` is 1.
struct OuterAngleCell {
  Eigen::VectorXd point;
  std::vector<int> active;
  /// Columns are the unit outward normals.
  Eigen::MatrixXd normals;
  double measure = 0.0;
  bool exact = true;
  std::string description;
};

/// Throws Errc::domain for interior points and Errc::corner_regularity when
/// the active normals are (nearly) dependent.
OuterAngleCell outer_angle_measure(const Region& region, const Eigen::VectorXd& p, const OuterAngleOptions& opt = {});

/// II_Z on the face tangent space, in the g-orthonormal basis `basis`.
/// For one constraint II(X, Y) = -Hess_c(X, Y) / |grad c| with Z the outward
/// unit normal; positive on the boundary circle of a flat disk.
struct SecondFundamentalForm {
  Eigen::MatrixXd basis;
  Eigen::MatrixXd form;
  /// Z = sum lambda_i n_i over the outward unit normals.
  Eigen::VectorXd lambda;
};

/// Z must lie in the nonnegative span of the face's outward normals
/// (Errc::domain otherwise).
SecondFundamentalForm second_fundamental_form(const Region& region, const Face& face, const Eigen::VectorXd& p,
                                              const Eigen::VectorXd& Z);
/// Same with Z the outward normal of a codimension-one face.
SecondFundamentalForm second_fundamental_form(const Region& region, const Face& face, const Eigen::VectorXd& p);

/// Riemannian (n-k)-volume of the face through its parametrization, times
/// the region multiplicity; 1 for a vertex. Errc::capability without one.
double face_volume(const Region& region, const Face& face);
/// Integral of f against the face's Riemannian volume, times the region
/// multiplicity; a vertex gives f at the vertex.
QuadResult face_integral(const Region& region, const Face& face, const std::function<double(const Eigen::VectorXd&)>& f,
                         const QuadratureSpec& spec);

/// chi' = chi(P) - chi(boundary), from cell data when present, else from
/// the known topology; Errc::insufficient_data otherwise.
int inner_euler(const Region& region);

/// Evaluates outer_angle_measure on a grid of parameter points of every
/// face; throws whatever regularity error it finds.
void check_corner_regularity(const Region& region, int points_per_axis = 5);

/// Integrand Psi * sqrt(det g) * multiplicity on the region's chart.
Integrand euler_integrand(const Region& region);

namespace regions {

/// [0,1]^2, constraints left, right, bottom, top.
Region unit_square();
/// Flat sector {0 <= arg <= interior_angle} cut by the unit circle; corner at the origin.
Region flat_sector(double interior_angle);
/// Positive octant of the unit sphere: three right angles, area pi/2.
Region spherical_triangle();
/// Northern hemisphere of the unit sphere (polar cap removed).
Region hemisphere();
/// Right-angled pentagon in the upper half-plane with vertices i, 0.8+0.6i,
/// (16+7.9372i)/11, 2.25+1.9843i, 3i; area pi/2.
Region hyperbolic_pentagon();
/// {0 <= u <= -log sqrt(eps)} in du^2 + e^{-6u} dtheta^2.
Region thin_strip(double eps);
/// {u >= -log sqrt(eps)} up to the chart end; one boundary fibre.
Region thin_cusp(double eps);

/// "square", "spherical-triangle", "hyperbolic-pentagon", "hemisphere".
Region polygon_by_name(const std::string& name);
std::vector<std::string> polygon_catalog();

}  // namespace regions

}  // namespace gbm
