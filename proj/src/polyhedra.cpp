#include "gbm/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gbm/error.hpp"
#include "gbm/euler_form.hpp"
#include "gbm/metrics.hpp"

namespace gbm {

using std::numbers::pi;

Region::Region(std::string name, MetricChart chart, std::vector<Axis> bounds, std::vector<Constraint> constraints)
    : name_(std::move(name)), chart_(std::move(chart)), bounds_(std::move(bounds)), constraints_(std::move(constraints)) {
  if (static_cast<int>(bounds_.size()) != chart_.dimension())
    throw Error(Errc::configuration, "region bounds do not match the chart dimension");
}

void Region::add_face(Face f) {
  std::sort(f.active.begin(), f.active.end());
  for (int i : f.active)
    if (i < 0 || i >= static_cast<int>(constraints_.size())) throw Error(Errc::configuration, "face refers to a missing constraint");
  if (f.active.empty() || static_cast<int>(f.active.size()) > dimension())
    throw Error(Errc::configuration, "face must have between 1 and n active constraints");
  faces_.push_back(std::move(f));
}

bool Region::contains(const Eigen::VectorXd& p, double tol) const {
  for (int k = 0; k < p.size(); ++k) {
    const Axis& a = bounds_[static_cast<std::size_t>(k)];
    if (p[k] < a.lo - tol || p[k] > a.hi + tol) return false;
  }
  for (const auto& c : constraints_)
    if (!(c.value(p) >= -tol * c.scale)) return false;
  return true;
}

ConstrainedBox Region::as_box() const {
  ConstrainedBox box{bounds_, {}};
  for (const auto& c : constraints_) box.constraints.push_back(c.value);
  return box;
}

namespace {

double fd_step(const Axis& a) { return std::max(1e-5, 1e-6 * a.length()); }

Eigen::VectorXd shifted(Eigen::VectorXd p, int k, double h) {
  p[k] += h;
  return p;
}

}  // namespace

Eigen::VectorXd Region::constraint_gradient(int i, const Eigen::VectorXd& p) const {
  const Constraint& c = constraints_.at(static_cast<std::size_t>(i));
  if (c.gradient) return c.gradient(p);
  const int n = dimension();
  Eigen::VectorXd g(n);
  for (int k = 0; k < n; ++k) {
    const double h = fd_step(bounds_[static_cast<std::size_t>(k)]);
    const double d1 = (c.value(shifted(p, k, h)) - c.value(shifted(p, k, -h))) / (2 * h);
    const double d2 = (c.value(shifted(p, k, 2 * h)) - c.value(shifted(p, k, -2 * h))) / (4 * h);
    g[k] = (4 * d1 - d2) / 3;
  }
  return g;
}

Eigen::MatrixXd Region::constraint_hessian(int i, const Eigen::VectorXd& p) const {
  const Constraint& c = constraints_.at(static_cast<std::size_t>(i));
  if (c.hessian) return c.hessian(p);
  const int n = dimension();
  Eigen::MatrixXd H(n, n);
  const double c0 = c.value(p);
  // same widened step as the metric second differences
  auto step = [&](int k) { return 100 * fd_step(bounds_[static_cast<std::size_t>(k)]); };
  for (int k = 0; k < n; ++k) {
    const double h = step(k);
    auto second = [&](double s) {
      return (c.value(shifted(p, k, s)) - 2 * c0 + c.value(shifted(p, k, -s))) / (s * s);
    };
    H(k, k) = (4 * second(h) - second(2 * h)) / 3;
    for (int l = k + 1; l < n; ++l) {
      const double hl = step(l);
      auto mixed = [&](double s) {
        return (c.value(shifted(shifted(p, k, s * h), l, s * hl)) - c.value(shifted(shifted(p, k, s * h), l, -s * hl)) -
                c.value(shifted(shifted(p, k, -s * h), l, s * hl)) + c.value(shifted(shifted(p, k, -s * h), l, -s * hl))) /
               (4 * s * s * h * hl);
      };
      H(k, l) = H(l, k) = (4 * mixed(1) - mixed(2)) / 3;
    }
  }
  return H;
}

std::vector<int> active_constraints(const Region& region, const Eigen::VectorXd& p, double tol) {
  std::vector<int> active;
  const auto& cs = region.constraints();
  for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
    const double v = cs[static_cast<std::size_t>(i)].value(p);
    const double t = tol * cs[static_cast<std::size_t>(i)].scale;
    if (v < -t) throw Error(Errc::domain, "point violates constraint '" + cs[static_cast<std::size_t>(i)].name + "'");
    if (std::abs(v) <= t) active.push_back(i);
  }
  return active;
}

Eigen::VectorXd outward_normal(const Region& region, int i, const Eigen::VectorXd& p) {
  const Eigen::MatrixXd g = region.chart().metric(p);
  const Eigen::VectorXd dc = region.constraint_gradient(i, p);
  const Eigen::VectorXd grad = g.llt().solve(dc);
  const double norm = std::sqrt(dc.dot(grad));
  if (!(norm >= 1e-10))
    throw Error(Errc::singular_gradient, "gradient of '" + region.constraints()[static_cast<std::size_t>(i)].name + "' vanishes");
  return -grad / norm;
}

OuterAngleCell outer_angle_measure(const Region& region, const Eigen::VectorXd& p, const OuterAngleOptions& opt) {
  OuterAngleCell cell;
  cell.point = p;
  cell.active = active_constraints(region, p, opt.tol);
  const int k = static_cast<int>(cell.active.size());
  if (k == 0) throw Error(Errc::domain, "outer angle requested at an interior point");
  const int n = region.dimension();
  if (k > n) throw Error(Errc::corner_regularity, "more active constraints than dimensions");

  const Eigen::MatrixXd g = region.chart().metric(p);
  cell.normals.resize(n, k);
  for (int j = 0; j < k; ++j) {
    try {
      cell.normals.col(j) = outward_normal(region, cell.active[static_cast<std::size_t>(j)], p);
    } catch (const Error& e) {
      throw Error(Errc::corner_regularity, e.what());
    }
  }
  const Eigen::MatrixXd gram = cell.normals.transpose() * g * cell.normals;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.eigenvalues().minCoeff() < 1e-10) throw Error(Errc::corner_regularity, "active constraint normals are dependent");

  if (k == 1) {
    cell.measure = 1.0;
    cell.description = "codimension-1: full outward normal";
    return cell;
  }
  if (k == 2 && !opt.force_sampling) {
    const double c = std::clamp(gram(0, 1), -1.0, 1.0);
    cell.measure = std::acos(c) / (2 * pi);
    cell.description = "codimension-2: exact arc";
    return cell;
  }

  // Uniform directions in the normal space; inside the cell iff the
  // coefficients on the normals are all nonnegative.
  const Eigen::MatrixXd E = orthonormal_frame(gram);
  const Eigen::MatrixXd A = E.transpose() * gram;  // normals in the orthonormal basis N E
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  std::size_t hits = 0;
  Eigen::VectorXd u(k);
  for (std::size_t s = 0; s < opt.samples; ++s) {
    for (int j = 0; j < k; ++j) u[j] = normal(rng);
    if ((lu.solve(u).array() >= 0).all()) ++hits;
  }
  cell.measure = static_cast<double>(hits) / static_cast<double>(opt.samples);
  cell.exact = false;
  cell.description = "codimension-" + std::to_string(k) + ": sampled spherical cell";
  return cell;
}

namespace {

Eigen::MatrixXd covariant_hessian(const Region& region, int i, const Eigen::VectorXd& p, const Christoffel& G) {
  const int n = region.dimension();
  Eigen::MatrixXd H = region.constraint_hessian(i, p);
  const Eigen::VectorXd dc = region.constraint_gradient(i, p);
  for (int k = 0; k < n; ++k) H -= dc[k] * G.symbols[static_cast<std::size_t>(k)];
  return H;
}

}  // namespace

SecondFundamentalForm second_fundamental_form(const Region& region, const Face& face, const Eigen::VectorXd& p,
                                              const Eigen::VectorXd& Z) {
  const int n = region.dimension();
  const int k = static_cast<int>(face.active.size());
  for (int i : face.active) {
    const Constraint& c = region.constraints()[static_cast<std::size_t>(i)];
    if (std::abs(c.value(p)) > 1e-8 * c.scale) throw Error(Errc::domain, "point is not on face '" + face.label + "'");
  }
  const Eigen::MatrixXd g = region.chart().metric(p);
  Eigen::MatrixXd N(n, k), D(k, n);
  Eigen::VectorXd gradnorm(k);
  for (int j = 0; j < k; ++j) {
    const int i = face.active[static_cast<std::size_t>(j)];
    N.col(j) = outward_normal(region, i, p);
    D.row(j) = region.constraint_gradient(i, p).transpose();
    gradnorm[j] = std::sqrt(D.row(j).dot(g.llt().solve(D.row(j).transpose())));
  }

  SecondFundamentalForm out;
  const Eigen::MatrixXd gram = N.transpose() * g * N;
  out.lambda = gram.ldlt().solve(N.transpose() * g * Z);
  const Eigen::VectorXd resid = Z - N * out.lambda;
  const double znorm = std::sqrt(Z.dot(g * Z));
  if (std::sqrt(resid.dot(g * resid)) > 1e-8 * std::max(1.0, znorm))
    throw Error(Errc::domain, "Z is not in the normal space of the face");
  if ((out.lambda.array() < -1e-12 * std::max(1.0, znorm)).any())
    throw Error(Errc::domain, "Z is outside the cone of outward normals");

  // g-orthonormal basis of ker D
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
  const Eigen::MatrixXd T = n == k ? Eigen::MatrixXd(n, 0) : Eigen::MatrixXd(lu.kernel());
  out.basis = T.cols() == 0 ? T : Eigen::MatrixXd(T * orthonormal_frame(Eigen::MatrixXd(T.transpose() * g * T)));

  const Christoffel G = christoffel(region.chart(), p);
  Eigen::MatrixXd form = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < k; ++j)
    form -= out.lambda[j] / gradnorm[j] * covariant_hessian(region, face.active[static_cast<std::size_t>(j)], p, G);
  out.form = out.basis.transpose() * form * out.basis;
  return out;
}

SecondFundamentalForm second_fundamental_form(const Region& region, const Face& face, const Eigen::VectorXd& p) {
  if (face.active.size() != 1) throw Error(Errc::domain, "default normal needs a codimension-one face");
  return second_fundamental_form(region, face, p, outward_normal(region, face.active[0], p));
}

namespace {

Eigen::MatrixXd param_jacobian(const FaceParametrization& fp, const Eigen::VectorXd& t) {
  const int m = static_cast<int>(fp.box.size());
  const Eigen::VectorXd x0 = fp.map(t);
  Eigen::MatrixXd J(x0.size(), m);
  for (int k = 0; k < m; ++k) {
    const double h = 1e-4 * std::max(1.0, fp.box[static_cast<std::size_t>(k)].length());
    const Eigen::VectorXd d1 = (fp.map(shifted(t, k, h)) - fp.map(shifted(t, k, -h))) / (2 * h);
    const Eigen::VectorXd d2 = (fp.map(shifted(t, k, 2 * h)) - fp.map(shifted(t, k, -2 * h))) / (4 * h);
    J.col(k) = (4 * d1 - d2) / 3;
  }
  return J;
}

}  // namespace

QuadResult face_integral(const Region& region, const Face& face, const std::function<double(const Eigen::VectorXd&)>& f,
                         const QuadratureSpec& spec) {
  if (!face.param) throw Error(Errc::capability, "face '" + face.label + "' has no parametrization");
  const FaceParametrization& fp = *face.param;
  if (fp.box.empty()) {
    QuadResult r;
    r.value = region.multiplicity() * f(fp.map(Eigen::VectorXd()));
    return r;
  }
  QuadResult r = quad_box(
      [&](const Eigen::VectorXd& t) {
        const Eigen::VectorXd p = fp.map(t);
        const Eigen::MatrixXd J = param_jacobian(fp, t);
        const Eigen::MatrixXd G = J.transpose() * region.chart().metric(p) * J;
        return f(p) * std::sqrt(G.determinant());
      },
      fp.box, spec);
  r.value *= region.multiplicity();
  r.error *= region.multiplicity();
  return r;
}

double face_volume(const Region& region, const Face& face) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-12;
  return face_integral(region, face, [](const Eigen::VectorXd&) { return 1.0; }, spec).value;
}

int inner_euler(const Region& region) {
  if (region.cell_data()) {
    int chi = 0;
    const auto& c = *region.cell_data();
    for (std::size_t d = 0; d < c.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * c[d];
    return chi;
  }
  if (region.topology()) return region.topology()->chi - region.topology()->chi_boundary;
  throw Error(Errc::insufficient_data, "region '" + region.name() + "' has neither cell data nor a known topology");
}

void check_corner_regularity(const Region& region, int points_per_axis) {
  OuterAngleOptions opt;
  opt.samples = 16;  // regularity only; the measure is not used
  for (const Face& f : region.faces()) {
    if (!f.param) continue;
    const int m = static_cast<int>(f.param->box.size());
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    while (true) {
      Eigen::VectorXd t(m);
      for (int k = 0; k < m; ++k) {
        const Axis& a = f.param->box[static_cast<std::size_t>(k)];
        t[k] = a.lo + a.length() * (idx[static_cast<std::size_t>(k)] + 0.5) / points_per_axis;
      }
      outer_angle_measure(region, f.param->map(t), opt);
      int k = m - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == points_per_axis) idx[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
  }
}

Integrand euler_integrand(const Region& region) {
  return [&region](const Eigen::VectorXd& p) {
    return region.multiplicity() * gb_density(region.chart(), p).value * volume_density(region.chart(), p);
  };
}

namespace regions {

namespace {

Constraint linear(std::string name, Eigen::VectorXd a, double b) {
  // a.x + b >= 0
  const int n = static_cast<int>(a.size());
  return Constraint{std::move(name), [a, b](const Eigen::VectorXd& p) { return a.dot(p) + b; },
                    [a](const Eigen::VectorXd&) { return a; },
                    [n](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(n, n); }};
}

// s * (|p - c|^2 - r^2) >= 0; s = +1 outside the circle, -1 inside
Constraint circle(std::string name, Eigen::Vector2d c, double r, double s) {
  return Constraint{std::move(name),
                    [c, r, s](const Eigen::VectorXd& p) { return s * ((p - c).squaredNorm() - r * r); },
                    [c, s](const Eigen::VectorXd& p) -> Eigen::VectorXd { return 2 * s * (p - c); },
                    [s](const Eigen::VectorXd&) -> Eigen::MatrixXd { return 2 * s * Eigen::MatrixXd::Identity(2, 2); },
                    r * r};
}

FaceParametrization point(Eigen::VectorXd p) {
  return {{}, [p](const Eigen::VectorXd&) { return p; }};
}

FaceParametrization segment(Eigen::Vector2d a, Eigen::Vector2d b) {
  return {{Axis{0, 1}}, [a, b](const Eigen::VectorXd& t) -> Eigen::VectorXd { return a + t[0] * (b - a); }};
}

FaceParametrization arc(Eigen::Vector2d c, double r, double t0, double t1) {
  return {{Axis{std::min(t0, t1), std::max(t0, t1)}},
          [c, r](const Eigen::VectorXd& t) -> Eigen::VectorXd { return c + r * Eigen::Vector2d(std::cos(t[0]), std::sin(t[0])); }};
}

Eigen::Vector2d circle_intersection(Eigen::Vector2d c1, double r1, Eigen::Vector2d c2, double r2) {
  // centres on the real axis; upper intersection point
  const double d = (c2 - c1).norm();
  const double a = (r1 * r1 - r2 * r2 + d * d) / (2 * d);
  const Eigen::Vector2d e = (c2 - c1) / d;
  return c1 + a * e + std::sqrt(r1 * r1 - a * a) * Eigen::Vector2d(-e.y(), e.x());
}

double angle_on(Eigen::Vector2d c, Eigen::Vector2d p) { return std::atan2(p.y() - c.y(), p.x() - c.x()); }

}  // namespace

Region unit_square() {
  Region r("square", metrics::euclidean(2), {Axis{0, 1}, Axis{0, 1}},
           {linear("left", Eigen::Vector2d(1, 0), 0), linear("right", Eigen::Vector2d(-1, 0), 1),
            linear("bottom", Eigen::Vector2d(0, 1), 0), linear("top", Eigen::Vector2d(0, -1), 1)});
  const Eigen::Vector2d v00(0, 0), v10(1, 0), v11(1, 1), v01(0, 1);
  r.add_face({"left", {0}, segment(v00, v01)});
  r.add_face({"right", {1}, segment(v10, v11)});
  r.add_face({"bottom", {2}, segment(v00, v10)});
  r.add_face({"top", {3}, segment(v01, v11)});
  r.add_face({"bottom-left", {0, 2}, point(v00)});
  r.add_face({"bottom-right", {1, 2}, point(v10)});
  r.add_face({"top-right", {1, 3}, point(v11)});
  r.add_face({"top-left", {0, 3}, point(v01)});
  r.set_topology({1, 0});
  return r;
}

Region flat_sector(double alpha) {
  if (!(alpha > 0 && alpha < pi)) throw Error(Errc::configuration, "sector angle must lie in (0, pi)");
  const Eigen::Vector2d o(0, 0), a(1, 0), b(std::cos(alpha), std::sin(alpha));
  Region r("sector", metrics::euclidean({Axis{-1.5, 1.5}, Axis{-1.5, 1.5}}), {Axis{-1, 1}, Axis{0, 1}},
           {linear("ray0", Eigen::Vector2d(0, 1), 0), linear("ray1", Eigen::Vector2d(std::sin(alpha), -std::cos(alpha)), 0),
            circle("arc", o, 1.0, -1.0)});
  r.add_face({"ray0", {0}, segment(o, a)});
  r.add_face({"ray1", {1}, segment(o, b)});
  r.add_face({"arc", {2}, arc(o, 1.0, 0.0, alpha)});
  r.add_face({"apex", {0, 1}, point(o)});
  r.add_face({"end0", {0, 2}, point(a)});
  r.add_face({"end1", {1, 2}, point(b)});
  r.set_topology({1, 0});
  return r;
}

Region spherical_triangle() {
  using metrics::cartesian_to_tilted;
  using metrics::tilted_to_cartesian;
  auto coord = [](int axis) {
    return [axis](const Eigen::VectorXd& p) { return tilted_to_cartesian(p[0], p[1])[axis]; };
  };
  Region r("spherical-triangle", metrics::sphere_tilted(1.0), {Axis{pi / 4, 3 * pi / 4}, Axis{-pi / 2, 0}},
           {Constraint{"x", coord(0)}, Constraint{"y", coord(1)}, Constraint{"z", coord(2)}});
  auto edge = [](auto f) {
    return FaceParametrization{{Axis{0, pi / 2}},
                               [f](const Eigen::VectorXd& t) -> Eigen::VectorXd { return cartesian_to_tilted(f(t[0])); }};
  };
  auto vertex = [](Eigen::Vector3d v) { return point(cartesian_to_tilted(v)); };
  r.add_face({"x=0", {0}, edge([](double t) { return Eigen::Vector3d(0, std::cos(t), std::sin(t)); })});
  r.add_face({"y=0", {1}, edge([](double t) { return Eigen::Vector3d(std::sin(t), 0, std::cos(t)); })});
  r.add_face({"z=0", {2}, edge([](double t) { return Eigen::Vector3d(std::cos(t), std::sin(t), 0); })});
  r.add_face({"e1", {1, 2}, vertex({1, 0, 0})});
  r.add_face({"e2", {0, 2}, vertex({0, 1, 0})});
  r.add_face({"e3", {0, 1}, vertex({0, 0, 1})});
  r.set_topology({1, 0});
  return r;
}

Region hemisphere() {
  Region r("hemisphere", metrics::sphere(1.0), {Axis{metrics::kPolarCap, pi / 2}, Axis{0, 2 * pi}},
           {Constraint{"equator", [](const Eigen::VectorXd& p) { return std::cos(p[0]); }}});
  r.add_face({"equator", {0},
              FaceParametrization{{Axis{0, 2 * pi}}, [](const Eigen::VectorXd& t) -> Eigen::VectorXd {
                                    return Eigen::Vector2d(pi / 2, t[0]);
                                  }}});
  r.set_topology({1, 0});
  return r;
}

Region hyperbolic_pentagon() {
  const Eigen::Vector2d o(0, 0), c1(1.25, 0), c2(4, 0);
  const double r1 = 0.75, r2 = std::sqrt(7.0);
  Region r("hyperbolic-pentagon", metrics::half_plane(), {Axis{0, 2.3}, Axis{0.55, 3.0}},
           {linear("imaginary-axis", Eigen::Vector2d(1, 0), 0), circle("unit", o, 1.0, 1.0), circle("radius-3", o, 3.0, -1.0),
            circle("c1", c1, r1, 1.0), circle("c2", c2, r2, 1.0)});
  const Eigen::Vector2d A(0, 1), E(0, 3);
  const Eigen::Vector2d B = circle_intersection(o, 1.0, c1, r1);
  const Eigen::Vector2d C = circle_intersection(c1, r1, c2, r2);
  const Eigen::Vector2d D = circle_intersection(o, 3.0, c2, r2);
  r.add_face({"imaginary-axis", {0}, segment(A, E)});
  r.add_face({"unit", {1}, arc(o, 1.0, angle_on(o, B), angle_on(o, A))});
  r.add_face({"c1", {3}, arc(c1, r1, angle_on(c1, C), angle_on(c1, B))});
  r.add_face({"c2", {4}, arc(c2, r2, angle_on(c2, D), angle_on(c2, C))});
  r.add_face({"radius-3", {2}, arc(o, 3.0, angle_on(o, D), angle_on(o, E))});
  r.add_face({"i", {0, 1}, point(A)});
  r.add_face({"B", {1, 3}, point(B)});
  r.add_face({"C", {3, 4}, point(C)});
  r.add_face({"D", {2, 4}, point(D)});
  r.add_face({"3i", {0, 2}, point(E)});
  r.set_topology({1, 0});
  return r;
}

namespace {

double level(double eps) {
  if (!(eps > 0 && eps <= 1)) throw Error(Errc::configuration, "eps must lie in (0, 1]");
  return -std::log(std::sqrt(eps));
}

FaceParametrization fibre(double u) {
  return {{Axis{0, 1}}, [u](const Eigen::VectorXd& t) -> Eigen::VectorXd { return Eigen::Vector2d(u, t[0]); }};
}

}  // namespace

Region thin_strip(double eps) {
  const double u0 = level(eps);
  Region r("thin-strip", metrics::model_thin(0.0, std::max(12.0, u0 + 1)), {Axis{0, u0}, Axis{0, 1}},
           {linear("u=0", Eigen::Vector2d(1, 0), 0), linear("u=u0", Eigen::Vector2d(-1, 0), u0)});
  r.add_face({"u=0", {0}, fibre(0.0)});
  r.add_face({"u=u0", {1}, fibre(u0)});
  r.set_topology({0, 0});
  return r;
}

Region thin_cusp(double eps) {
  const double u0 = level(eps);
  const double top = std::max(12.0, u0 + 1);
  Region r("thin-cusp", metrics::model_thin(0.0, top), {Axis{u0, top}, Axis{0, 1}}, {linear("u=u0", Eigen::Vector2d(1, 0), -u0)});
  r.add_face({"u=u0", {0}, fibre(u0)});
  r.set_topology({0, 0});
  return r;
}

Region polygon_by_name(const std::string& name) {
  if (name == "square") return unit_square();
  if (name == "spherical-triangle") return spherical_triangle();
  if (name == "hyperbolic-pentagon") return hyperbolic_pentagon();
  if (name == "hemisphere") return hemisphere();
  throw Error(Errc::configuration, "unknown polygon '" + name + "'");
}

std::vector<std::string> polygon_catalog() { return {"square", "spherical-triangle", "hyperbolic-pentagon", "hemisphere"}; }

}  // namespace regions

}  // namespace gbm
